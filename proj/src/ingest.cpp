#include "trichonet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace trichonet {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> tokens;
  if (delimiter == '\0') {  // any run of spaces/tabs/commas
    std::string cur;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
        if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
  } else {
    std::string cur;
    for (char c : line) {
      if (c == delimiter) {
        tokens.push_back(std::move(cur));
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    tokens.push_back(std::move(cur));
  }
  return tokens;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::int64_t parse_count(const std::string& token, const std::string& context, int line_no) {
  std::size_t pos = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(token, &pos);
  } catch (const std::exception&) {
    throw DataError(context + ": line " + std::to_string(line_no) + ": not an integer: '" +
                    token + "'");
  }
  if (pos != token.size())
    throw DataError(context + ": line " + std::to_string(line_no) + ": not an integer: '" +
                    token + "'");
  return value;
}

}  // namespace

DegreeHistogram parse_edge_list(const EdgeListSpec& spec) {
  if (spec.degree_mode != DegreeMode::Total && spec.directedness != Directedness::Directed)
    throw ParamError("in/out degree modes require a directed edge list");
  std::ifstream in(spec.path);
  if (!in) throw DataError("cannot open edge list: " + spec.path);
  return parse_edge_list(in, spec);
}

DegreeHistogram parse_edge_list(std::istream& in, const EdgeListSpec& spec) {
  if (spec.degree_mode != DegreeMode::Total && spec.directedness != Directedness::Directed)
    throw ParamError("in/out degree modes require a directed edge list");

  std::unordered_map<std::string, int> ids;
  std::vector<std::int64_t> in_degree, out_degree;
  std::set<std::pair<int, int>> seen;  // Dedup mode only

  auto intern = [&](const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<int>(ids.size()));
    if (inserted) {
      in_degree.push_back(0);
      out_degree.push_back(0);
    }
    return it->second;
  };

  std::string line;
  int line_no = 0;
  std::int64_t edges = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!line.empty() && line[0] == spec.comment_prefix) continue;
    const auto tokens = split_line(line, spec.delimiter);
    if (tokens.size() < 2 || tokens[0].empty() || tokens[1].empty())
      throw DataError(spec.path + ": line " + std::to_string(line_no) +
                      ": expected two node identifiers");
    const int u = intern(tokens[0]);
    const int v = intern(tokens[1]);
    if (u == v && spec.self_loops == SelfLoopPolicy::Drop) continue;
    if (spec.duplicates == DuplicatePolicy::Dedup) {
      auto key = spec.directedness == Directedness::Directed
                     ? std::pair{u, v}
                     : std::pair{std::min(u, v), std::max(u, v)};
      if (!seen.insert(key).second) continue;
    }
    out_degree[static_cast<std::size_t>(u)] += 1;
    in_degree[static_cast<std::size_t>(v)] += 1;
    ++edges;
  }
  if (edges == 0) throw DataError(spec.path + ": no edges found");

  DegreeHistogram hist;
  for (std::size_t i = 0; i < in_degree.size(); ++i) {
    std::int64_t d = 0;
    switch (spec.degree_mode) {
      case DegreeMode::In: d = in_degree[i]; break;
      case DegreeMode::Out: d = out_degree[i]; break;
      case DegreeMode::Total: d = in_degree[i] + out_degree[i]; break;
    }
    if (d > 0) hist.add(static_cast<int>(d));
  }
  if (hist.empty()) throw DataError(spec.path + ": no nodes with positive degree");
  return hist;
}

DegreeHistogram parse_histogram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open histogram: " + path);
  return parse_histogram(in, path);
}

DegreeHistogram parse_histogram(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || split_line(line, ',') != std::vector<std::string>{"degree", "count"})
    throw DataError(name + ": expected header 'degree,count'");
  DegreeHistogram hist;
  std::set<int> degrees_seen;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto tokens = split_line(line, ',');
    if (tokens.size() != 2)
      throw DataError(name + ": line " + std::to_string(line_no) + ": expected 'degree,count'");
    const std::int64_t degree = parse_count(tokens[0], name, line_no);
    const std::int64_t count = parse_count(tokens[1], name, line_no);
    if (degree < 0 || count < 0)
      throw DataError(name + ": line " + std::to_string(line_no) + ": negative value");
    if (!degrees_seen.insert(static_cast<int>(degree)).second)
      throw DataError(name + ": line " + std::to_string(line_no) + ": duplicate degree " +
                      std::to_string(degree));
    hist.add(static_cast<int>(degree), count);
  }
  if (hist.empty() || hist.total() == 0) throw DataError(name + ": empty histogram body");
  return hist;
}

void emit_histogram(const DegreeHistogram& hist, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write histogram: " + path);
  out << histogram_to_csv(hist);
}

}  // namespace trichonet
