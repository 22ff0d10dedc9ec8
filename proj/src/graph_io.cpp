#include "sbm/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sbm {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& why) {
    throw std::runtime_error(path.string() + ": " + why);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    return in;
}

} // namespace

void write_edge_list(const std::filesystem::path& path, const AdjacencyMatrix& A) {
    std::ofstream out = open_out(path);
    out << "n=" << A.rows() << " directed=1 selfloops=1\n";
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (A(i, j)) out << (i + 1) << ' ' << (j + 1) << '\n';
    if (!out) fail(path, "write failed");
}

AdjacencyMatrix read_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string header;
    if (!std::getline(in, header)) fail(path, "missing header");
    int n = -1;
    if (std::sscanf(header.c_str(), "n=%d directed=1 selfloops=1", &n) != 1 || n < 0)
        fail(path, "bad edge-list header: " + header);
    AdjacencyMatrix A(n, n, 0);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i = 0, j = 0;
        if (!(ls >> i >> j) || i < 1 || j < 1 || i > n || j > n)
            fail(path, "bad edge line: " + line);
        A(i - 1, j - 1) = 1;
    }
    return A;
}

void write_dense(const std::filesystem::path& path, const AdjacencyMatrix& A) {
    std::ofstream out = open_out(path);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            if (j) out << ' ';
            out << (A(i, j) ? '1' : '0');
        }
        out << '\n';
    }
    if (!out) fail(path, "write failed");
}

AdjacencyMatrix read_dense(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<std::vector<std::uint8_t>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::uint8_t> row;
        std::istringstream ls(line);
        char c;
        while (ls >> c) {
            if (c != '0' && c != '1') fail(path, "dense entries must be 0 or 1");
            row.push_back(c == '1' ? 1 : 0);
        }
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    AdjacencyMatrix A(n, n, 0);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) fail(path, "dense matrix must be square");
        for (int j = 0; j < n; ++j) A(i, j) = rows[i][j];
    }
    return A;
}

AdjacencyMatrix read_adjacency_auto(const std::filesystem::path& path) {
    {
        std::ifstream in = open_in(path);
        std::string head(2, '\0');
        in.read(head.data(), 2);
        if (in.gcount() >= 2 && head == "n=") return read_edge_list(path);
    }
    return read_dense(path);
}

} // namespace sbm
