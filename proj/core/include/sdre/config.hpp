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

#ifndef SDRE_CONFIG_HPP_
#define SDRE_CONFIG_HPP_

#include <string>
#include <string_view>

#include "sdre/pipeline.hpp"

namespace sdre {

// Parses a JSON experiment configuration. Field names mirror
// ExperimentConfig; omitted fields keep their defaults and unknown fields
// are rejected. A run manifest is accepted too: its "config" member is used.
// Throws kInvalidConfig with the offending field in the message.
ExperimentConfig ParseExperimentConfig(std::string_view json_text);

// Full configuration (defaults included) as pretty-printed JSON.
std::string ExperimentConfigToJson(const ExperimentConfig& cfg);

// Applies the SDRE_SEED environment variable, if set, to base_seed.
void ApplySeedOverride(ExperimentConfig& cfg);

}  // namespace sdre

#endif  // SDRE_CONFIG_HPP_
