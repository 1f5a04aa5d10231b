#include "nearopt/lp/lp_text.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nearopt/error.hpp"

namespace nearopt::lp {
namespace {

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

double to_number(const std::string& token, std::size_t line_no) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
        fail(ErrorCode::kParse,
             "line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
    return v;
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
    fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": " + what);
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

LpText parse_lp_text(std::string_view text) {
    LpText out;
    bool have_min = false;
    bool have_names = false;
    bool have_interest = false;
    struct Pending {
        std::vector<std::string> tokens;
        std::size_t line_no;
    };
    std::vector<Pending> constraints;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string& head = tokens.front();
        if (head == "names") {
            if (have_names) parse_error(line_no, "duplicate names line");
            have_names = true;
            out.names.assign(tokens.begin() + 1, tokens.end());
        } else if (head == "min" || head == "minimize") {
            if (have_min) parse_error(line_no, "duplicate objective line");
            have_min = true;
            for (std::size_t i = 1; i < tokens.size(); ++i)
                out.costs.push_back(to_number(tokens[i], line_no));
            if (out.costs.empty()) parse_error(line_no, "empty objective");
        } else if (head == "interest") {
            if (have_interest) parse_error(line_no, "duplicate interest line");
            have_interest = true;
            out.interest.assign(tokens.begin() + 1, tokens.end());
        } else {
            constraints.push_back({std::move(tokens), line_no});
        }
    }
    if (!have_min) fail(ErrorCode::kParse, "missing 'min' objective line");
    const std::size_t n = out.costs.size();
    if (have_names && out.names.size() != n) {
        fail(ErrorCode::kParse, "names line has " + std::to_string(out.names.size()) +
                                    " entries, objective has " + std::to_string(n));
    }
    if (!have_names) {
        for (std::size_t j = 0; j < n; ++j) out.names.push_back("x" + std::to_string(j + 1));
    }

    for (auto& [tokens, ln] : constraints) {
        RowSpec row;
        if (!tokens.empty() && tokens.back().starts_with('@')) {
            row.name = tokens.back().substr(1);
            tokens.pop_back();
        }
        if (tokens.size() != n + 2) {
            parse_error(ln, "constraint has " + std::to_string(tokens.size()) +
                                " tokens, expected " + std::to_string(n + 2));
        }
        const std::string& rel = tokens[n];
        if (rel == "<=") {
            row.relation = Relation::kLessEqual;
        } else if (rel == ">=") {
            row.relation = Relation::kGreaterEqual;
        } else if (rel == "=" || rel == "==") {
            row.relation = Relation::kEqual;
        } else {
            parse_error(ln, "unknown relation '" + rel + "'");
        }
        for (std::size_t j = 0; j < n; ++j) row.coeffs.push_back(to_number(tokens[j], ln));
        row.rhs = to_number(tokens[n + 1], ln);
        out.rows.push_back(std::move(row));
    }
    return out;
}

LpText read_lp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::kIo, "cannot open LP file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_lp_text(ss.str());
}

StandardFormLP LpText::to_standard_form() const {
    auto lp = build_standard_form(rows, costs, names);
    std::vector<std::size_t> cols;
    for (const auto& name : interest) cols.push_back(lp.column_index(name));
    lp.set_interest_columns(std::move(cols));
    return lp;
}

void write_lp_text(std::ostream& os, const StandardFormLP& lp) {
    os << "# " << lp.rows() << " rows, " << lp.cols() << " columns\n";
    os << "names";
    for (const auto& name : lp.column_names()) os << ' ' << name;
    os << "\nmin";
    for (double v : lp.c()) os << ' ' << fmt_double(v);
    os << '\n';
    for (std::size_t r = 0; r < lp.rows(); ++r) {
        for (double v : lp.a().row(r)) os << fmt_double(v) << ' ';
        os << "= " << fmt_double(lp.b()[r]) << " @" << lp.row_names()[r] << '\n';
    }
    if (!lp.interest_columns().empty()) {
        os << "interest";
        for (std::size_t j : lp.interest_columns()) os << ' ' << lp.column_names()[j];
        os << '\n';
    }
}

std::string to_lp_text(const StandardFormLP& lp) {
    std::ostringstream os;
    write_lp_text(os, lp);
    return os.str();
}

} // namespace nearopt::lp
