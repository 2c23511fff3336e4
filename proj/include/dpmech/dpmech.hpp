// Copyright 2026 The dpmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Umbrella header.

#pragma once

#include "dpmech/analysis.hpp"
#include "dpmech/core.hpp"
#include "dpmech/error.hpp"
#include "dpmech/eval.hpp"
#include "dpmech/explicit.hpp"
#include "dpmech/lp.hpp"
#include "dpmech/mechanism_io.hpp"
#include "dpmech/simplex.hpp"
