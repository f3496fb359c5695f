// Copyright 2026 The th-rebase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "threbase/core/circuit.hpp"
#include "threbase/core/distance.hpp"
#include "threbase/core/errors.hpp"
#include "threbase/core/gates.hpp"
#include "threbase/core/matrix.hpp"
#include "threbase/core/random.hpp"
#include "threbase/io/circuit_file.hpp"
#include "threbase/io/net_cache.hpp"
#include "threbase/passes/realify.hpp"
#include "threbase/passes/rebase.hpp"
#include "threbase/passes/report.hpp"
#include "threbase/sk/commutator.hpp"
#include "threbase/sk/gateset.hpp"
#include "threbase/sk/net.hpp"
#include "threbase/sk/solovay_kitaev.hpp"
#include "threbase/verify/equivalence.hpp"
#include "threbase/verify/statevector.hpp"
