// Copyright 2026 The CARE Authors
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

#ifndef CARE_JSON_IO_HPP_
#define CARE_JSON_IO_HPP_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "care/model.hpp"

namespace care {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(message + " at " + path), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Parses a JSON instance document. Money fields accept decimal strings,
// "p/q" strings, or integer tokens; float tokens are rejected as inexact.
// Errors carry the JSON path of the offending field.
Instance parse_instance(const std::string& text);
Instance instance_from_json(const Json& doc);

Json instance_to_json(const Instance& inst);
std::string serialize_instance(const Instance& inst);

Json outcome_to_json(const Outcome& outcome);
Json violations_to_json(const std::vector<Violation>& violations);

}  // namespace care

#endif  // CARE_JSON_IO_HPP_
