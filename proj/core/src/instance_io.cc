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

#include "fairsel/instance_io.h"

#include <fstream>
#include <sstream>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"

namespace fairsel {
namespace {

using nlohmann::json;

std::vector<int> AttrList(const json& v, int s, const char* field) {
  if (v.is_number_integer() && s == 1) return {v.get<int>()};
  if (!v.is_array()) {
    throw json::type_error::create(
        302, absl::StrCat("field '", field, "' must be an int list"), &v);
  }
  return v.get<std::vector<int>>();
}

}  // namespace

absl::StatusOr<Instance> ParseInstanceJson(const std::string& text) {
  Instance inst;
  try {
    const json doc = json::parse(text);
    inst.n = doc.at("n").get<int>();
    inst.p = doc.at("p").get<std::vector<int>>();
    const int s = static_cast<int>(inst.p.size());
    if (doc.contains("s") && doc["s"].get<int>() != s) {
      return absl::InvalidArgumentError("field 's' disagrees with len(p)");
    }
    for (const json& it : doc.at("items")) {
      Item item;
      item.utility = it.at("w").get<double>();
      item.noise = it.at("q").get<std::vector<std::vector<double>>>();
      if (it.contains("z")) item.true_attrs = AttrList(it["z"], s, "z");
      if (it.contains("zhat")) item.noisy_attrs = AttrList(it["zhat"], s, "zhat");
      if (it.contains("a")) item.features = it["a"].get<std::vector<double>>();
      inst.items.push_back(std::move(item));
    }
    if (doc.contains("m") && doc["m"].get<int>() != inst.m()) {
      return absl::InvalidArgumentError("field 'm' disagrees with len(items)");
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("instance json: ", e.what()));
  }
  NormalizeNoiseRows(inst);
  const std::vector<ValidationIssue> issues = ValidateInstance(inst);
  if (!issues.empty()) {
    std::vector<std::string> lines;
    for (const ValidationIssue& issue : issues) lines.push_back(issue.message);
    return absl::InvalidArgumentError(absl::StrJoin(lines, "; "));
  }
  return inst;
}

std::string InstanceToJson(const Instance& inst) {
  json doc;
  doc["m"] = inst.m();
  doc["n"] = inst.n;
  doc["s"] = inst.s();
  doc["p"] = inst.p;
  json items = json::array();
  for (const Item& item : inst.items) {
    json it;
    it["w"] = item.utility;
    it["q"] = item.noise;
    if (item.true_attrs) it["z"] = *item.true_attrs;
    if (item.noisy_attrs) it["zhat"] = *item.noisy_attrs;
    if (!item.features.empty()) it["a"] = item.features;
    items.push_back(std::move(it));
  }
  doc["items"] = std::move(items);
  return doc.dump() + "\n";
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << contents;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<Instance> LoadInstance(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseInstanceJson(*text);
}

absl::Status SaveInstance(const Instance& inst, const std::string& path) {
  return WriteFile(path, InstanceToJson(inst));
}

}  // namespace fairsel
