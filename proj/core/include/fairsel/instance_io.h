// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSEL_INSTANCE_IO_H_
#define FAIRSEL_INSTANCE_IO_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fairsel/instance.h"

namespace fairsel {

// Instance files are JSON objects
//   {"m": .., "n": .., "s": .., "p": [..],
//    "items": [{"w": .., "q": [[..], ..], "z": [..], "zhat": [..], "a": [..]}]}
// z, zhat and a are optional. Attribute values are 0-based; a scalar z or
// zhat is accepted when s = 1. Rows within the row-sum tolerance are
// renormalized; anything ValidateInstance rejects is an error.
absl::StatusOr<Instance> ParseInstanceJson(const std::string& text);
std::string InstanceToJson(const Instance& inst);

absl::StatusOr<Instance> LoadInstance(const std::string& path);
absl::Status SaveInstance(const Instance& inst, const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, const std::string& contents);

}  // namespace fairsel

#endif  // FAIRSEL_INSTANCE_IO_H_
