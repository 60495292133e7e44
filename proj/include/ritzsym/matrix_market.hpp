#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ritzsym/operators.hpp"

namespace ritzsym {

namespace detail {
inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}
}  // namespace detail

// Reads a Matrix Market file in "coordinate real symmetric" form (1-based
// indices, one stored entry per unordered pair). Anything else is rejected
// with a message saying what was found.
inline SymmetricOperator read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file: " + path.string());

    std::string banner;
    if (!std::getline(in, banner)) throw IoError("empty matrix file: " + path.string());
    std::istringstream bs(banner);
    std::string tag, object, format, field, symmetry;
    bs >> tag >> object >> format >> field >> symmetry;
    if (detail::lowercase(tag) != "%%matrixmarket")
        throw IoError(path.string() + ": missing %%MatrixMarket banner, got '" + banner + "'");
    object = detail::lowercase(object);
    format = detail::lowercase(format);
    field = detail::lowercase(field);
    symmetry = detail::lowercase(symmetry);
    if (object != "matrix" || format != "coordinate")
        throw IoError(path.string() + ": expected 'matrix coordinate', got '" + object + " " +
                      format + "'");
    if (field != "real")
        throw IoError(path.string() + ": only 'real' entries are supported, got '" + field + "'");
    if (symmetry != "symmetric")
        throw IoError(path.string() + ": matrix kind must be 'symmetric', got '" + symmetry +
                      "' (a general matrix cannot back a symmetric operator)");

    std::string line;
    std::size_t rows = 0, cols = 0, nnz = 0;
    bool have_sizes = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> rows >> cols >> nnz)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            throw IoError(path.string() + ": malformed size line '" + line + "'");
        }
        have_sizes = true;
        break;
    }
    if (!have_sizes) throw IoError(path.string() + ": missing size line");
    if (rows != cols)
        throw IoError(path.string() + ": symmetric matrix must be square, got " +
                      std::to_string(rows) + "x" + std::to_string(cols));
    if (rows == 0) throw IoError(path.string() + ": zero-dimensional matrix");

    std::vector<SymmetricOperator::Triplet> entries;
    entries.reserve(nnz);
    std::size_t count = 0;
    while (count < nnz && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream ls(line);
        long long i = 0, j = 0;
        double v = 0.0;
        if (!(ls >> i >> j >> v))
            throw IoError(path.string() + ": malformed entry line '" + line + "'");
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > rows ||
            static_cast<std::size_t>(j) > cols)
            throw IoError(path.string() + ": index (" + std::to_string(i) + "," +
                          std::to_string(j) + ") out of range for dimension " +
                          std::to_string(rows));
        entries.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v});
        ++count;
    }
    if (count != nnz)
        throw IoError(path.string() + ": expected " + std::to_string(nnz) + " entries, found " +
                      std::to_string(count));

    try {
        return SymmetricOperator::sparse(rows, std::move(entries));
    } catch (const InvalidInput& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

// Writes the sparse/dense operator in the same coordinate-symmetric form,
// lower triangle only, with round-trip-exact floats.
inline void write_matrix_market(const std::filesystem::path& path, const SymmetricOperator& a) {
    std::vector<SymmetricOperator::Triplet> entries;
    if (a.is_sparse()) {
        entries = a.triplets();
    } else {
        Matrix d = a.to_dense();
        for (std::size_t i = 0; i < a.n(); ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (d(i, j) != 0.0) entries.push_back({i, j, d(i, j)});
    }
    for (auto& t : entries)
        if (t.row < t.col) std::swap(t.row, t.col);
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        return x.col != y.col ? x.col < y.col : x.row < y.row;
    });

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << a.n() << " " << a.n() << " " << entries.size() << "\n";
    char buf[64];
    for (const auto& t : entries) {
        std::snprintf(buf, sizeof buf, "%.17g", t.value);
        out << (t.row + 1) << " " << (t.col + 1) << " " << buf << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace ritzsym
