// Copyright 2026 The SPEA Authors
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

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.hpp"

namespace spea::cli {

using Json = nlohmann::ordered_json;

/// Rows of one kind with a fixed column order. Every row carries every column.
struct Table {
  std::vector<std::string> columns;
  Json rows = Json::array();
};

Table search_table(const std::vector<RunRecord>& records);
Table search_summary_table(const SearchAggregate& a, const RunRecord& first);
Table trial_table(const std::vector<TrialRecord>& trials);
Table dc_summary_table(const std::vector<DcAggregate>& aggregates);
Table bound_trial_table(const std::vector<BoundTrial>& trials);
Table verify_summary_table(const VerifyReport& report);
Table sidelobe_table(const std::vector<SidelobeRow>& rows);

/// Doubles are written with 17 significant digits so rows round-trip.
void write_csv(std::ostream& out, const Table& table);

/// {"command", "rng_algorithm", "parameters", "records", "summary"}
Json make_report(const std::string& command, const Json& parameters, const Table& records, const Table& summary);

/// Writes `records` and `summary` to `path`: one JSON report, or for a
/// .csv path the records there and the summary next to it as
/// <stem>.summary.csv. Throws InvalidArgument for other extensions.
void write_output(const std::string& path, const std::string& command, const Json& parameters, const Table& records,
                  const Table& summary);

}  // namespace spea::cli
