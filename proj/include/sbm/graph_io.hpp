#pragma once

#include <filesystem>
#include <string>

#include "sbm/matrix.hpp"

namespace sbm {

// Adjacency text formats. Both round-trip bit-exactly: writers emit one
// canonical byte sequence per matrix, readers accept exactly that form.
//
// Edge list:   header "n=<n> directed=1 selfloops=1", then one "i j" line
//              per edge in row-major order, 1-indexed.
// Dense text:  n lines of n space-separated 0/1 digits.

void write_edge_list(const std::filesystem::path& path, const AdjacencyMatrix& A);
AdjacencyMatrix read_edge_list(const std::filesystem::path& path);

void write_dense(const std::filesystem::path& path, const AdjacencyMatrix& A);
AdjacencyMatrix read_dense(const std::filesystem::path& path);

/// Dispatches on the "n=" header to pick the format.
AdjacencyMatrix read_adjacency_auto(const std::filesystem::path& path);

} // namespace sbm
