#include <cctype>

#include "hsfgl/laurent.hpp"

namespace hsfgl::detail {

std::string render_monomial(const std::string& coeff, bool is_one, long exponent, std::string_view var) {
    if (exponent == 0) {
        return coeff;
    }
    std::string out = is_one ? "" : coeff + "*";
    out += var;
    if (exponent != 1) {
        out += "^" + std::to_string(exponent);
    }
    return out;
}

std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& term = terms[i];
        if (i == 0) {
            out += term;
        } else if (!term.empty() && term.front() == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

namespace {

std::pair<long, Rat> parse_term(std::string_view term, bool negative, std::string_view var, std::string_view whole) {
    auto fail = [&](const std::string& why) {
        return ParseError(why + " in '" + std::string(whole) + "'");
    };
    Rat coeff(1);
    long exponent = 0;
    std::size_t pos = 0;
    if (pos < term.size() && std::isdigit(static_cast<unsigned char>(term[pos]))) {
        std::size_t end = pos;
        while (end < term.size() && (std::isdigit(static_cast<unsigned char>(term[end])) || term[end] == '/')) {
            ++end;
        }
        coeff = Rat::parse(std::string(term.substr(pos, end - pos)));
        pos = end;
        if (pos < term.size()) {
            if (term[pos] != '*') {
                throw fail("expected '*' after coefficient");
            }
            ++pos;
            if (pos == term.size()) {
                throw fail("dangling '*'");
            }
        }
    }
    if (pos < term.size()) {
        if (term.substr(pos, var.size()) != var) {
            throw fail("expected variable '" + std::string(var) + "'");
        }
        pos += var.size();
        exponent = 1;
        if (pos < term.size()) {
            if (term[pos] != '^') {
                throw fail("expected '^'");
            }
            ++pos;
            std::string digits(term.substr(pos));
            if (digits.empty() || digits == "-") {
                throw fail("missing exponent");
            }
            for (std::size_t i = 0; i < digits.size(); ++i) {
                if (!(std::isdigit(static_cast<unsigned char>(digits[i])) || (i == 0 && digits[i] == '-'))) {
                    throw fail("bad exponent");
                }
            }
            exponent = std::stol(digits);
        }
    }
    if (term.empty()) {
        throw fail("empty term");
    }
    return {exponent, negative ? -coeff : coeff};
}

} // namespace

std::vector<std::pair<long, Rat>> parse_laurent_terms(std::string_view text, std::string_view var) {
    std::string compact;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            compact.push_back(ch);
        }
    }
    if (compact.empty()) {
        throw ParseError("empty polynomial");
    }
    std::vector<std::pair<long, Rat>> out;
    if (compact == "0") {
        return out;
    }
    bool negative = false;
    std::string current;
    auto flush = [&] {
        out.push_back(parse_term(current, negative, var, text));
        current.clear();
    };
    for (std::size_t i = 0; i < compact.size(); ++i) {
        char ch = compact[i];
        bool is_separator = (ch == '+' || ch == '-') && (i == 0 || compact[i - 1] != '^');
        if (is_separator) {
            if (i > 0) {
                flush();
            }
            negative = ch == '-';
            continue;
        }
        current.push_back(ch);
    }
    flush();
    return out;
}

} // namespace hsfgl::detail
