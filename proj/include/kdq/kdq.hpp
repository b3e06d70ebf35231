// Copyright 2026 The kdq developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "kdq/basis.hpp"
#include "kdq/bounds.hpp"
#include "kdq/cycle.hpp"
#include "kdq/errors.hpp"
#include "kdq/gates.hpp"
#include "kdq/indexing.hpp"
#include "kdq/kd.hpp"
#include "kdq/matrix.hpp"
#include "kdq/random.hpp"
#include "kdq/sampler.hpp"
#include "kdq/spectral.hpp"
#include "kdq/superop.hpp"
