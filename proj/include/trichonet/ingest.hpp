#pragma once

#include <iosfwd>
#include <string>

#include "trichonet/histogram.hpp"

namespace trichonet {

enum class Directedness { Undirected, Directed };
enum class DegreeMode { In, Out, Total };
enum class SelfLoopPolicy { Drop, Count };
enum class DuplicatePolicy { Count, Dedup };

// Edge-list file description. Node identifiers are opaque strings mapped
// to dense indices; the delimiter is auto-detected among whitespace,
// comma and tab unless set explicitly.
struct EdgeListSpec {
  std::string path;
  char delimiter = '\0';  // '\0' = auto-detect
  Directedness directedness = Directedness::Undirected;
  DegreeMode degree_mode = DegreeMode::Total;
  char comment_prefix = '#';
  SelfLoopPolicy self_loops = SelfLoopPolicy::Drop;
  DuplicatePolicy duplicates = DuplicatePolicy::Count;
};

DegreeHistogram parse_edge_list(const EdgeListSpec& spec);
DegreeHistogram parse_edge_list(std::istream& in, const EdgeListSpec& spec);

// "degree,count" CSV with a header row; duplicate or negative rows are
// rejected.
DegreeHistogram parse_histogram(const std::string& path);
DegreeHistogram parse_histogram(std::istream& in, const std::string& name);

void emit_histogram(const DegreeHistogram& hist, const std::string& path);

}  // namespace trichonet
