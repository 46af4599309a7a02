// Copyright 2026 The sdre Authors.
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

#ifndef SDRE_SDRE_HPP_
#define SDRE_SDRE_HPP_

#include "sdre/box.hpp"
#include "sdre/config.hpp"
#include "sdre/dataset.hpp"
#include "sdre/dgp.hpp"
#include "sdre/dsgc.hpp"
#include "sdre/error.hpp"
#include "sdre/forest.hpp"
#include "sdre/io.hpp"
#include "sdre/metrics.hpp"
#include "sdre/mse.hpp"
#include "sdre/parallel.hpp"
#include "sdre/pipeline.hpp"
#include "sdre/prim.hpp"
#include "sdre/random.hpp"
#include "sdre/sampling.hpp"

namespace sdre {
inline constexpr const char* kVersion = "0.1.0";
}  // namespace sdre

#endif  // SDRE_SDRE_HPP_
