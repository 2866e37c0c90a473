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

#include "pgb/cli/io.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <utility>

#include "pgb/errors.h"

namespace pgb::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Line reader that tracks line numbers and strips trailing CR.
class CsvReader {
 public:
  CsvReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  bool Next(std::vector<std::string_view>& fields) {
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (!line_.empty() && line_.back() == '\r') line_.pop_back();
      if (line_.empty()) continue;
      fields = SplitCsv(line_);
      return true;
    }
    return false;
  }

  void ExpectHeader(std::string_view header) {
    std::vector<std::string_view> fields;
    if (!Next(fields)) Fail("missing header '" + std::string(header) + "'");
    if (line_ != header) {
      Fail("expected header '" + std::string(header) + "', got '" + line_ +
           "'");
    }
  }

  double Double(std::string_view text) const {
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail("not a number: '" + std::string(text) + "'");
    }
    return v;
  }

  long long Integer(std::string_view text) const {
    long long v = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail("not an integer: '" + std::string(text) + "'");
    }
    return v;
  }

  void ExpectFields(const std::vector<std::string_view>& fields,
                    std::size_t n) const {
    if (fields.size() != n) {
      Fail("expected " + std::to_string(n) + " fields, got " +
           std::to_string(fields.size()));
    }
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError(source_, line_no_, msg);
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::string source_;
  std::string line_;
  std::size_t line_no_ = 0;
};

// Runs `fn`, rethrowing domain errors raised while building a value from a
// parsed file as a parse error at the given line.
template <typename Fn>
auto AtLine(const std::string& source, std::size_t line, Fn fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(source, line, e.what());
  }
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::ofstream OpenForWrite(const fs::path& path) {
  const fs::path parent = path.parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw IoError(parent.string(), "output directory does not exist");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  return out;
}

std::ifstream OpenForRead(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return in;
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out = OpenForWrite(path);
  out << text;
  if (!out) throw IoError(path.string(), "write failed");
}

std::string ReadTextFile(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteScoreMatrixCsv(std::ostream& out, const ScoreMatrix& sm) {
  out << "n_real," << sm.n_real() << '\n';
  out << "real_means";
  for (double m : sm.real_means()) out << ',' << FormatDouble(m);
  out << '\n';
  for (std::size_t j = 0; j < sm.num_discriminators(); ++j) {
    out << "disc_" << j;
    for (double v : sm.row(j)) out << ',' << FormatDouble(v);
    out << '\n';
  }
  out << "pool_ids";
  for (const PoolId& id : sm.pool_ids()) out << ',' << FormatPoolId(id);
  out << '\n';
}

ScoreMatrix ReadScoreMatrixCsv(std::istream& in, const std::string& source) {
  CsvReader reader(in, source);
  std::vector<std::string_view> f;
  if (!reader.Next(f) || f[0] != "n_real") {
    reader.Fail("first record must be 'n_real,<count>'");
  }
  reader.ExpectFields(f, 2);
  const long long n_real = reader.Integer(f[1]);
  if (n_real < 1) reader.Fail("n_real must be >= 1");

  if (!reader.Next(f) || f[0] != "real_means") {
    reader.Fail("second record must be 'real_means,...'");
  }
  std::vector<double> means;
  for (std::size_t i = 1; i < f.size(); ++i) {
    means.push_back(reader.Double(f[i]));
  }
  if (means.empty()) reader.Fail("real_means lists no discriminators");

  std::vector<std::vector<double>> rows;
  std::vector<PoolId> ids;
  std::size_t width = 0;
  while (reader.Next(f)) {
    if (f[0] == "pool_ids") {
      for (std::size_t i = 1; i < f.size(); ++i) {
        try {
          ids.push_back(ParsePoolId(std::string(f[i])));
        } catch (const Error& e) {
          reader.Fail(e.what());
        }
      }
      if (reader.Next(f)) reader.Fail("unexpected record after pool_ids");
      break;
    }
    const std::string expected = "disc_" + std::to_string(rows.size());
    if (f[0] != expected) {
      reader.Fail("expected record '" + expected + "', got '" +
                  std::string(f[0]) + "'");
    }
    if (rows.empty()) {
      width = f.size() - 1;
      if (width == 0) reader.Fail("score rows must not be empty");
    }
    reader.ExpectFields(f, width + 1);
    std::vector<double> row;
    row.reserve(width);
    for (std::size_t i = 1; i < f.size(); ++i) {
      row.push_back(reader.Double(f[i]));
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != means.size()) {
    reader.Fail("real_means has " + std::to_string(means.size()) +
                " entries but there are " + std::to_string(rows.size()) +
                " score rows");
  }
  if (!ids.empty() && ids.size() != width) {
    reader.Fail("pool_ids has " + std::to_string(ids.size()) +
                " entries for " + std::to_string(width) + " pool samples");
  }
  return AtLine(source, reader.line_no(), [&] {
    return ScoreMatrix::Create(static_cast<int>(n_real), std::move(means),
                               rows, std::move(ids));
  });
}

void SaveScoreMatrix(const fs::path& path, const ScoreMatrix& sm) {
  std::ofstream out = OpenForWrite(path);
  WriteScoreMatrixCsv(out, sm);
  if (!out) throw IoError(path.string(), "write failed");
}

ScoreMatrix LoadScoreMatrix(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  return ReadScoreMatrixCsv(in, path.string());
}

void SaveDataset(const fs::path& path, const toy::Dataset& d) {
  std::ofstream out = OpenForWrite(path);
  out << "x1,x2,mode\n";
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << FormatDouble(d.points[i].x1) << ',' << FormatDouble(d.points[i].x2)
        << ',' << d.modes[i] << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

toy::Dataset LoadDataset(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  CsvReader reader(in, path.string());
  reader.ExpectHeader("x1,x2,mode");
  toy::Dataset d;
  std::vector<std::string_view> f;
  while (reader.Next(f)) {
    reader.ExpectFields(f, 3);
    d.points.push_back({reader.Double(f[0]), reader.Double(f[1])});
    d.modes.push_back(static_cast<int>(reader.Integer(f[2])));
  }
  if (d.size() == 0) reader.Fail("dataset has no rows");
  return d;
}

void SavePool(const fs::path& path, const toy::Pool& pool) {
  std::ofstream out = OpenForWrite(path);
  out << "x1,x2,mode,generator_id\n";
  for (std::size_t i = 0; i < pool.size(); ++i) {
    out << FormatDouble(pool.points[i].x1) << ','
        << FormatDouble(pool.points[i].x2) << ',' << pool.modes[i] << ','
        << pool.ids[i].generator << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

toy::Pool LoadPool(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  CsvReader reader(in, path.string());
  reader.ExpectHeader("x1,x2,mode,generator_id");
  toy::Pool pool;
  std::vector<int> next_sample;
  std::vector<std::string_view> f;
  while (reader.Next(f)) {
    reader.ExpectFields(f, 4);
    pool.points.push_back({reader.Double(f[0]), reader.Double(f[1])});
    pool.modes.push_back(static_cast<int>(reader.Integer(f[2])));
    const long long g = reader.Integer(f[3]);
    if (g < 0) reader.Fail("generator_id must be >= 0");
    if (static_cast<std::size_t>(g) >= next_sample.size()) {
      next_sample.resize(g + 1, 0);
    }
    pool.ids.push_back({static_cast<int>(g), next_sample[g]++});
  }
  if (pool.size() == 0) reader.Fail("pool has no rows");
  return pool;
}

void SavePhiBar(const fs::path& path, const SyntheticDistribution& phi,
                const std::vector<PoolId>& ids) {
  if (ids.size() != phi.size()) {
    throw ShapeError("phi-bar and pool id counts differ");
  }
  std::ofstream out = OpenForWrite(path);
  out << "pool_index,generator_id,weight\n";
  for (std::size_t b = 0; b < phi.size(); ++b) {
    out << b << ',' << ids[b].generator << ',' << FormatDouble(phi[b]) << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

SyntheticDistribution LoadPhiBar(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  CsvReader reader(in, path.string());
  reader.ExpectHeader("pool_index,generator_id,weight");
  std::vector<double> w;
  std::vector<std::string_view> f;
  while (reader.Next(f)) {
    reader.ExpectFields(f, 3);
    if (reader.Integer(f[0]) != static_cast<long long>(w.size())) {
      reader.Fail("pool_index out of sequence");
    }
    w.push_back(reader.Double(f[2]));
  }
  return AtLine(path.string(), reader.line_no(),
                [&] { return SyntheticDistribution::Create(std::move(w)); });
}

void SaveDBar(const fs::path& path, const MixtureDiscriminator& d_bar) {
  std::ofstream out = OpenForWrite(path);
  out << "discriminator_index,weight\n";
  for (std::size_t j = 0; j < d_bar.size(); ++j) {
    out << j << ',' << FormatDouble(d_bar[j]) << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

MixtureDiscriminator LoadDBar(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  CsvReader reader(in, path.string());
  reader.ExpectHeader("discriminator_index,weight");
  std::vector<double> w;
  std::vector<std::string_view> f;
  while (reader.Next(f)) {
    reader.ExpectFields(f, 2);
    if (reader.Integer(f[0]) != static_cast<long long>(w.size())) {
      reader.Fail("discriminator_index out of sequence");
    }
    w.push_back(reader.Double(f[1]));
  }
  return AtLine(path.string(), reader.line_no(),
                [&] { return MixtureDiscriminator::Create(std::move(w)); });
}

void SaveTrajectory(const fs::path& path,
                    const std::vector<std::vector<double>>& trajectory) {
  std::ofstream out = OpenForWrite(path);
  out << "round";
  const std::size_t width = trajectory.empty() ? 0 : trajectory[0].size();
  for (std::size_t b = 0; b < width; ++b) out << ",w_" << b;
  out << '\n';
  for (std::size_t t = 0; t < trajectory.size(); ++t) {
    out << t + 1;
    for (double v : trajectory[t]) out << ',' << FormatDouble(v);
    out << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

void SaveAccepted(const fs::path& path, const DrsResult& drs,
                  const SyntheticDistribution& proposal,
                  const std::vector<PoolId>& ids) {
  std::ofstream out = OpenForWrite(path);
  out << "pool_index,generator_id,weight_at_acceptance\n";
  for (std::size_t b : drs.accepted) {
    out << b << ',' << ids.at(b).generator << ','
        << FormatDouble(proposal[b]) << '\n';
  }
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<std::size_t> LoadAcceptedIndices(const fs::path& path) {
  std::ifstream in = OpenForRead(path);
  CsvReader reader(in, path.string());
  reader.ExpectHeader("pool_index,generator_id,weight_at_acceptance");
  std::vector<std::size_t> out;
  std::vector<std::string_view> f;
  while (reader.Next(f)) {
    reader.ExpectFields(f, 3);
    const long long b = reader.Integer(f[0]);
    if (b < 0) reader.Fail("pool_index must be >= 0");
    out.push_back(static_cast<std::size_t>(b));
  }
  return out;
}

json DiscriminatorsToJson(const std::vector<toy::DiscriminatorModel>& models) {
  json maps = json::array();
  std::vector<const toy::FeatureMap*> distinct;
  json entries = json::array();
  for (const auto& m : models) {
    std::size_t index = distinct.size();
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      if (*distinct[i] == m.feature_map) index = i;
    }
    if (index == distinct.size()) {
      distinct.push_back(&m.feature_map);
      json map = {{"kind", toy::FeatureKindName(m.feature_map.kind())}};
      if (m.feature_map.kind() == toy::FeatureKind::kFourier) {
        map["frequencies"] = m.feature_map.frequencies();
        map["phases"] = m.feature_map.phases();
      }
      maps.push_back(std::move(map));
    }
    entries.push_back({{"feature_map", index},
                       {"coefficients", m.coefficients},
                       {"intercept", m.intercept}});
  }
  return {{"feature_maps", maps}, {"models", entries}};
}

std::vector<toy::DiscriminatorModel> DiscriminatorsFromJson(
    const json& j, const std::string& source) {
  try {
    std::vector<toy::FeatureMap> maps;
    for (const json& m : j.at("feature_maps")) {
      const auto kind = toy::ParseFeatureKind(m.at("kind").get<std::string>());
      if (kind == toy::FeatureKind::kFourier) {
        maps.push_back(toy::FeatureMap::FourierFromParams(
            m.at("frequencies").get<std::vector<double>>(),
            m.at("phases").get<std::vector<double>>()));
      } else {
        maps.push_back(toy::FeatureMap::OfKind(kind));
      }
    }
    std::vector<toy::DiscriminatorModel> models;
    for (const json& m : j.at("models")) {
      toy::DiscriminatorModel model;
      model.feature_map = maps.at(m.at("feature_map").get<std::size_t>());
      model.coefficients = m.at("coefficients").get<std::vector<double>>();
      model.intercept = m.at("intercept").get<double>();
      model.Validate();
      models.push_back(std::move(model));
    }
    if (models.empty()) throw ContractError("no discriminator models");
    return models;
  } catch (const json::exception& e) {
    throw ParseError(source, 0, e.what());
  } catch (const std::out_of_range& e) {
    throw ParseError(source, 0, "feature_map index out of range");
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(source, 0, e.what());
  }
}

json LoadJsonFile(const fs::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError(path.string(), line, e.what());
  }
}

void SaveJsonFile(const fs::path& path, const json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

}  // namespace pgb::cli
