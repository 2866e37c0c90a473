// Copyright 2026 The PGB Authors
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

#ifndef PGB_CLI_IO_H_
#define PGB_CLI_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgb/distribution.h"
#include "pgb/rejection.h"
#include "pgb/score_matrix.h"
#include "pgb/toybench/discriminator.h"
#include "pgb/toybench/grid.h"

namespace pgb::cli {

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double v);

// Opens `path` for writing; a missing parent directory is an IoError.
std::ofstream OpenForWrite(const std::filesystem::path& path);
std::ifstream OpenForRead(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

// Score matrix CSV, one record per line:
//   n_real,<n>
//   real_means,<m_0>,...,<m_{N-1}>
//   disc_<j>,<D_j(b_0)>,...       (one line per discriminator, j ascending)
//   pool_ids,<g>:<i>,...          (optional)
void WriteScoreMatrixCsv(std::ostream& out, const ScoreMatrix& sm);
ScoreMatrix ReadScoreMatrixCsv(std::istream& in, const std::string& source);
void SaveScoreMatrix(const std::filesystem::path& path, const ScoreMatrix& sm);
ScoreMatrix LoadScoreMatrix(const std::filesystem::path& path);

// Dataset CSV with header x1,x2,mode.
void SaveDataset(const std::filesystem::path& path, const toy::Dataset& d);
toy::Dataset LoadDataset(const std::filesystem::path& path);

// Pool CSV with header x1,x2,mode,generator_id. Sample indices are
// reassigned in file order per generator.
void SavePool(const std::filesystem::path& path, const toy::Pool& pool);
toy::Pool LoadPool(const std::filesystem::path& path);

// phi-bar CSV with header pool_index,generator_id,weight.
void SavePhiBar(const std::filesystem::path& path,
                const SyntheticDistribution& phi,
                const std::vector<PoolId>& ids);
SyntheticDistribution LoadPhiBar(const std::filesystem::path& path);

// D-bar CSV with header discriminator_index,weight.
void SaveDBar(const std::filesystem::path& path,
              const MixtureDiscriminator& d_bar);
MixtureDiscriminator LoadDBar(const std::filesystem::path& path);

// Per-round synthetic distributions: header round,w_0,...,w_{|B|-1}.
void SaveTrajectory(const std::filesystem::path& path,
                    const std::vector<std::vector<double>>& trajectory);

// Accepted DRS draws: header pool_index,generator_id,weight_at_acceptance,
// the last column being the proposal probability of the drawn sample.
void SaveAccepted(const std::filesystem::path& path, const DrsResult& drs,
                  const SyntheticDistribution& proposal,
                  const std::vector<PoolId>& ids);
std::vector<std::size_t> LoadAcceptedIndices(
    const std::filesystem::path& path);

// Discriminator models as JSON: the shared feature map plus one
// {coefficients, intercept} entry per model.
nlohmann::json DiscriminatorsToJson(
    const std::vector<toy::DiscriminatorModel>& models);
std::vector<toy::DiscriminatorModel> DiscriminatorsFromJson(
    const nlohmann::json& j, const std::string& source);

// Parses a JSON file, reporting syntax errors with their line number.
nlohmann::json LoadJsonFile(const std::filesystem::path& path);
void SaveJsonFile(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace pgb::cli

#endif  // PGB_CLI_IO_H_
