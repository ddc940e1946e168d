#include "ipr/matrix_io.hpp"

#include <fstream>
#include <sstream>

namespace ipr {

namespace {

// Next line that is neither blank nor a '#' comment; false at EOF.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;
        if (line[pos] == '#') continue;
        return true;
    }
    return false;
}

}  // namespace

Matrix parse_matrix(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw ParseError("matrix: empty input");

    std::istringstream header(line);
    long long u = 0, v = 0;
    if (!(header >> u >> v)) throw ParseError("matrix: bad header line: '" + line + "'");
    std::string extra;
    if (header >> extra) throw ParseError("matrix: trailing tokens in header: '" + line + "'");
    if (u < 1 || v < 1) throw ParseError("matrix: dimensions must be >= 1");

    std::vector<std::vector<Rational>> rows;
    rows.reserve(static_cast<std::size_t>(u));
    for (long long i = 0; i < u; ++i) {
        if (!next_content_line(in, line))
            throw ParseError("matrix: expected " + std::to_string(u) + " rows, got " + std::to_string(i));
        std::istringstream row_in(line);
        std::vector<Rational> row;
        row.reserve(static_cast<std::size_t>(v));
        std::string tok;
        while (row_in >> tok) row.push_back(Rational::parse(tok));
        if (row.size() != static_cast<std::size_t>(v))
            throw ParseError("matrix: row " + std::to_string(i + 1) + " has " +
                             std::to_string(row.size()) + " entries, expected " + std::to_string(v));
        rows.push_back(std::move(row));
    }
    if (next_content_line(in, line)) throw ParseError("matrix: trailing content after last row");
    return Matrix::from_rows(rows);
}

Matrix parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

Matrix load_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return parse_matrix(in);
}

std::string render_matrix(const Matrix& a) {
    std::ostringstream out;
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << a(i, j);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ipr
