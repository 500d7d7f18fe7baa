// Copyright 2026 The isomech Authors. All rights reserved.
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

#include "isomech/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "isomech/audit.hpp"
#include "isomech/errors.hpp"

namespace isomech {

namespace pt = boost::property_tree;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"network", {"kind", "authors", "papers", "max_authors_per_paper", "path",
                 "strict_iclr_counts", "redraw"}},
    {"quality", {"kind", "author_mean", "author_var", "paper_noise_var", "bonus_mean",
                 "bonus_var", "bonus_per_paper"}},
    {"noise", {"review_var"}},
    {"protocol", {"kind", "quota", "winners"}},
    {"sweep", {"epsilons", "quotas", "winners", "protocols", "rounds", "seed", "jobs"}},
    {"audit", {"outcome", "lambda", "buckets", "bucket_width", "range_lo", "range_hi"}},
    {"output", {"dir"}},
};

class Reader {
 public:
  Reader(const pt::ptree& section, std::string source, std::string name)
      : section_(section), source_(std::move(source)), name_(std::move(name)) {}

  std::optional<std::string> text(const char* key) const {
    auto v = section_.get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return *v;
  }

  template <typename T>
  void number(const char* key, T& out) const {
    auto v = text(key);
    if (!v) return;
    out = parse<T>(*v, key);
  }

  void boolean(const char* key, bool& out) const {
    auto v = text(key);
    if (!v) return;
    if (*v == "true" || *v == "1" || *v == "yes") {
      out = true;
    } else if (*v == "false" || *v == "0" || *v == "no") {
      out = false;
    } else {
      fail(key, "expected true or false");
    }
  }

  template <typename T>
  void list(const char* key, std::vector<T>& out) const {
    auto v = text(key);
    if (!v) return;
    out.clear();
    std::istringstream is(*v);
    std::string item;
    while (std::getline(is, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) fail(key, "empty list item");
      out.push_back(parse<T>(item.substr(b, e - b + 1), key));
    }
    if (out.empty()) fail(key, "list must not be empty");
  }

  [[noreturn]] void fail(const char* key, const std::string& what) const {
    throw InputError(source_, 0, "[" + name_ + "] " + key + ": " + what);
  }

 private:
  template <typename T>
  T parse(const std::string& s, const char* key) const {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(key, "cannot parse '" + s + "'");
    return v;
  }

  const pt::ptree& section_;
  std::string source_;
  std::string name_;
};

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::string& source) {
  std::ostringstream raw;
  raw << in.rdbuf();
  const std::string text = raw.str();

  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(source, e.line(), e.message());
  }

  for (const auto& [name, section] : tree) {
    auto schema = kSchema.find(name);
    if (schema == kSchema.end()) {
      if (section.empty()) throw InputError(source, 0, "key '" + name + "' outside any section");
      throw InputError(source, 0, "unknown section [" + name + "]");
    }
    for (const auto& [key, value] : section) {
      if (!schema->second.count(key)) {
        throw InputError(source, 0, "unknown key '" + key + "' in section [" + name + "]");
      }
    }
  }

  RunConfig cfg;
  cfg.content_hash = fnv1a(text);
  const pt::ptree empty;
  auto section = [&](const char* name) {
    auto child = tree.get_child_optional(name);
    return Reader(child ? *child : empty, source, name);
  };

  {
    Reader r = section("network");
    NetworkModel& m = cfg.sweep.network;
    if (auto kind = r.text("kind")) {
      if (*kind == "uniform") {
        m.kind = NetworkModel::Kind::kUniform;
      } else if (*kind == "from_file") {
        m.kind = NetworkModel::Kind::kFromFile;
      } else {
        r.fail("kind", "expected uniform or from_file");
      }
    }
    r.number("authors", m.num_authors);
    r.number("papers", m.num_papers);
    r.number("max_authors_per_paper", m.max_authors_per_paper);
    if (auto p = r.text("path")) m.path = *p;
    r.boolean("strict_iclr_counts", m.strict_iclr_counts);
    if (r.text("redraw")) {
      bool redraw = true;
      r.boolean("redraw", redraw);
      cfg.sweep.redraw_override = redraw;
    }
  }
  {
    Reader r = section("quality");
    QualityModel& m = cfg.sweep.quality;
    if (auto kind = r.text("kind")) {
      if (*kind == "standard") {
        m.kind = QualityModel::Kind::kStandard;
      } else if (*kind == "productivity_weighted") {
        m.kind = QualityModel::Kind::kProductivityWeighted;
      } else {
        r.fail("kind", "expected standard or productivity_weighted");
      }
    }
    r.number("author_mean", m.author_mean);
    r.number("author_var", m.author_var);
    r.number("paper_noise_var", m.paper_noise_var);
    r.number("bonus_mean", m.bonus_mean);
    r.number("bonus_var", m.bonus_var);
    r.boolean("bonus_per_paper", m.bonus_per_paper);
  }
  section("noise").number("review_var", cfg.noise.review_var);
  {
    Reader r = section("protocol");
    if (auto kind = r.text("kind")) {
      try {
        cfg.protocol.kind = protocol_from_string(*kind);
      } catch (const std::invalid_argument& e) {
        r.fail("kind", e.what());
      }
    }
    r.number("quota", cfg.protocol.quota);
    r.number("winners", cfg.protocol.winners);
  }
  {
    Reader r = section("sweep");
    SweepConfig& s = cfg.sweep;
    r.list("epsilons", s.epsilons);
    r.list("quotas", s.quotas);
    r.list("winners", s.winners);
    if (auto names = r.text("protocols")) {
      s.protocols.clear();
      std::istringstream is(*names);
      std::string item;
      while (std::getline(is, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) r.fail("protocols", "empty list item");
        try {
          s.protocols.push_back(protocol_from_string(item.substr(b, e - b + 1)));
        } catch (const std::invalid_argument& ex) {
          r.fail("protocols", ex.what());
        }
      }
    }
    r.number("rounds", s.rounds);
    r.number("seed", s.seed);
    r.number("jobs", s.jobs);
  }
  {
    Reader r = section("audit");
    AuditSettings& a = cfg.audit;
    if (auto o = r.text("outcome")) a.outcome = *o;
    r.number("lambda", a.lambda);
    if (auto b = r.text("buckets")) {
      if (*b != "uniform" && *b != "high_resolution") {
        r.fail("buckets", "expected uniform or high_resolution");
      }
      a.buckets = *b;
    }
    r.number("bucket_width", a.bucket_width);
    r.number("range_lo", a.range_lo);
    r.number("range_hi", a.range_hi);
  }
  if (auto dir = section("output").text("dir")) cfg.output_dir = *dir;

  try {
    cfg.sweep.validate();
    cfg.noise.validate();
    cfg.protocol.validate();
    predicate_from_string(cfg.audit.outcome);
  } catch (const std::invalid_argument& e) {
    throw InputError(source, 0, e.what());
  }
  if (cfg.sweep.network.kind == NetworkModel::Kind::kFromFile && cfg.sweep.network.path.empty()) {
    throw InputError(source, 0, "[network] path is required for kind = from_file");
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, 0, "cannot open config file");
  return parse_run_config(in, path);
}

}  // namespace isomech
