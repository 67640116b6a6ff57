#include "qforge/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qforge/error.hpp"

namespace qforge {

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool parse_double(std::string_view token, double& out) {
    auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

}  // namespace

void write_matrix(std::ostream& os, const Mat4& m, const std::string& comment) {
    if (!comment.empty()) os << "# " << comment << '\n';
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            os << format_double(m(r, c).real()) << ' ' << format_double(m(r, c).imag()) << '\n';
}

Mat4 read_matrix(std::istream& is) {
    std::vector<Complex> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string re_tok, im_tok, extra;
        double re = 0, im = 0;
        if (!(ls >> re_tok >> im_tok) || (ls >> extra) || !parse_double(re_tok, re) ||
            !parse_double(im_tok, im)) {
            throw Error(ErrorCode::ParseError,
                        "line " + std::to_string(lineno) + ": expected \"re im\"");
        }
        entries.emplace_back(re, im);
    }
    if (entries.size() != 16) {
        throw Error(ErrorCode::ParseError,
                    "expected 16 entries, found " + std::to_string(entries.size()));
    }
    Mat4 m;
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = entries[i];
    return m;
}

void write_matrix_file(const std::string& path, const Mat4& m, const std::string& comment) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open " + path + " for writing");
    write_matrix(os, m, comment);
}

Mat4 read_matrix_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return read_matrix(is);
}

}  // namespace qforge
