#include "commands.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "hsfgl/hsd.hpp"
#include "hsfgl/io.hpp"

namespace hsfgl::cli {

using nlohmann::json;
using Poly = LaurentPoly<PrimeField>;

std::uint64_t LawSpec::growth() const { return kind == Kind::honda ? checked_power(p, h) : 1; }

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    return out;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 9) {
        throw ParseError("bad " + what + " '" + s + "'");
    }
    return std::stoull(s);
}

long parse_long(const std::string& s, const std::string& what) {
    if (!s.empty() && s.front() == '-') {
        return -static_cast<long>(parse_uint(s.substr(1), what));
    }
    return static_cast<long>(parse_uint(s, what));
}

std::string descriptor_of(const LawSpec& spec) {
    switch (spec.kind) {
    case LawSpec::Kind::additive:
        return "additive:" + std::to_string(spec.p);
    case LawSpec::Kind::multiplicative:
        return "multiplicative:" + std::to_string(spec.p);
    case LawSpec::Kind::honda:
        return "honda:" + std::to_string(spec.p) + ":" + std::to_string(spec.h);
    }
    return {};
}

DegreeWindow parse_window(const std::string& s) {
    const auto parts = split(s, ':');
    if (parts.size() != 2) {
        throw ParseError("window must be LO:HI, got '" + s + "'");
    }
    DegreeWindow w{parse_long(parts[0], "window bound"), parse_long(parts[1], "window bound")};
    if (w.lo > w.hi) {
        throw ParseError("window LO exceeds HI");
    }
    return w;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        out += l + "\n";
    }
    return out;
}

// Human-readable diff of two Laurent polynomials.
std::string diff_monomials(const Poly& expected, const Poly& actual) {
    const auto missing = expected - actual;
    std::vector<std::string> parts;
    for (auto it = missing.terms().rbegin(); it != missing.terms().rend(); ++it) {
        parts.push_back(render_term(expected.field(), it->second, it->first, "t"));
    }
    return "expected - actual = " + detail::join_terms(parts);
}

struct Context {
    std::string command;
    json parameters = json::object();
    std::vector<std::string> lines;
    json result = json::object();
    bool failed = false;
    std::string summary;

    Report finish() const {
        Report r;
        r.exit_code = failed ? kCheckFailed : kOk;
        r.text = join_lines(lines);
        r.json = {{"command", command},
                  {"parameters", parameters},
                  {"result", result},
                  {"summary", summary.empty() ? (failed ? "FAIL" : "OK") : summary}};
        return r;
    }
};

// ---------------------------------------------------------------------------
// fgl

Report cmd_fgl(const std::string& descriptor, std::size_t precision, const std::vector<std::string>& words,
               std::size_t probe_precision) {
    const auto spec = parse_descriptor(descriptor);
    if (words.empty()) {
        throw ParseError("fgl needs an action: build, check, height, truncate M, inverse, coeff N");
    }
    const auto& action = words[0];
    auto need_args = [&](std::size_t n) {
        if (words.size() != n + 1) {
            throw ParseError("action '" + action + "' takes " + std::to_string(n) + " argument(s)");
        }
    };
    Context ctx;
    ctx.command = "fgl";
    ctx.parameters = {{"law", descriptor_of(spec)}, {"precision", precision}, {"action", action}};
    const auto law = build_law(spec, precision);

    if (action == "build") {
        need_args(0);
        ctx.lines.push_back(to_string(law.body()));
        ctx.result = law_to_json(law);
    } else if (action == "check") {
        need_args(0);
        const auto report = check_axioms(law);
        auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
        ctx.lines.push_back(std::string("left unit: ") + verdict(report.left_unit));
        ctx.lines.push_back(std::string("right unit: ") + verdict(report.right_unit));
        ctx.lines.push_back(std::string("associativity: ") + verdict(report.associative) + " (through degree " +
                            std::to_string(report.degree_checked) + ")");
        if (!report.first_failure.empty()) {
            ctx.lines.push_back("first failure: " + report.first_failure);
        }
        ctx.result = {{"left_unit", report.left_unit},
                      {"right_unit", report.right_unit},
                      {"associative", report.associative},
                      {"degree_checked", report.degree_checked}};
        ctx.failed = !report.passed();
        ctx.summary = report.passed() ? "PASS" : "FAIL";
    } else if (action == "height") {
        need_args(0);
        const auto h = height(law);
        ctx.lines.push_back(h.to_string());
        ctx.result = {{"finite", h.is_finite()}};
        if (h.is_finite()) {
            ctx.result["height"] = h.height;
            ctx.result["unit"] = h.unit->value();
        } else {
            ctx.result["bound"] = h.bound;
        }
    } else if (action == "truncate") {
        need_args(1);
        const auto m = static_cast<unsigned>(parse_uint(words[1], "truncation level"));
        const auto truncated = truncate(law, m);
        ctx.parameters["m"] = m;
        ctx.lines.push_back(to_string(truncated));
        ctx.result = {{"m", m}, {"law", to_string(truncated)}};
    } else if (action == "inverse") {
        need_args(0);
        const auto inv = formal_inverse(law);
        ctx.lines.push_back(to_string(inv));
        ctx.result = {{"inverse", to_string(inv)}};
    } else if (action == "coeff") {
        need_args(1);
        const auto n = static_cast<std::size_t>(parse_uint(words[1], "order"));
        const std::size_t high = probe_precision == 0 ? 2 * precision : probe_precision;
        const auto probe = probe_coeff_of_y(law, n, high);
        ctx.parameters["n"] = n;
        ctx.parameters["probe_precision"] = high;
        const auto poly = to_string(probe.polynomial(), "X");
        ctx.lines.push_back("[Y^" + std::to_string(n) + "] F = " + poly);
        ctx.lines.push_back(std::string(probe.stabilized ? "stabilized" : "NOT stabilized") + " between N=" +
                            std::to_string(precision) + " and N'=" + std::to_string(high));
        ctx.result = {{"polynomial", poly}, {"stabilized", probe.stabilized}};
        ctx.failed = !probe.stabilized;
    } else {
        throw ParseError("unknown fgl action '" + action + "'");
    }
    return ctx.finish();
}

// ---------------------------------------------------------------------------
// deriv

Report cmd_deriv(const std::string& descriptor, std::size_t orders, std::size_t precision,
                 const std::optional<DegreeWindow>& window_flag, const std::vector<std::string>& words) {
    const auto spec = parse_descriptor(descriptor);
    if (words.empty()) {
        throw ParseError("deriv needs an action: canonical, apply Q N, inverse-image, check-iterative [M], check-p1");
    }
    if (orders == 0) {
        throw ParseError("--orders must be at least 1");
    }
    if (precision == 0) {
        precision = 2 * orders + 1;
    }
    const auto window = window_flag.value_or(default_window(orders, spec.growth()));
    const auto& action = words[0];
    Context ctx;
    ctx.command = "deriv";
    ctx.parameters = {{"law", descriptor_of(spec)},
                      {"orders", orders},
                      {"precision", precision},
                      {"window", window.to_string()},
                      {"action", action}};
    const auto law = build_law(spec, precision);
    const auto d = canonical_derivation(law, orders, window);
    const auto& field = law.field();

    if (action == "canonical") {
        if (words.size() != 1) {
            throw ParseError("canonical takes no arguments");
        }
        for (std::size_t n = 1; n < orders; ++n) {
            ctx.lines.push_back("D_" + std::to_string(n) + "(t) = " + to_string(d.image(n)));
        }
        ctx.result = table_to_json(d);
    } else if (action == "apply") {
        if (words.size() != 3) {
            throw ParseError("apply takes a Laurent polynomial and an order");
        }
        const auto q = parse_laurent(field, words[1]);
        const auto n = static_cast<std::size_t>(parse_uint(words[2], "order"));
        const auto value = hs_apply(d, q, n);
        ctx.lines.push_back("D_" + std::to_string(n) + "(" + to_string(q) + ") = " + to_string(value));
        ctx.result = {{"n", n}, {"argument", to_string(q)}, {"value", to_string(value)}};
    } else if (action == "inverse-image") {
        if (words.size() != 1) {
            throw ParseError("inverse-image takes no arguments");
        }
        const auto images = hs_inverse_image(d, orders);
        json entries = json::array();
        for (std::size_t n = 0; n < images.size(); ++n) {
            ctx.lines.push_back("D_" + std::to_string(n) + "(1/t) = " + to_string(images[n]));
            entries.push_back({{"n", n}, {"poly", to_string(images[n])}});
        }
        ctx.result = {{"entries", entries}};
    } else if (action == "check-iterative") {
        IterativityReport report;
        if (words.size() == 1) {
            report = check_f_iterativity(d, law);
        } else if (words.size() == 2) {
            const auto m = static_cast<unsigned>(parse_uint(words[1], "truncation level"));
            ctx.parameters["m"] = m;
            report = check_f_iterativity(d, truncate(law, m));
        } else {
            throw ParseError("check-iterative takes at most one argument");
        }
        ctx.lines.push_back(report.to_string());
        ctx.result = {{"pass", report.pass}, {"bound", report.bound}, {"truncated", report.truncated}};
        if (report.first_mismatch) {
            const auto& m = *report.first_mismatch;
            ctx.result["mismatch"] = {{"i", m.i}, {"j", m.j}, {"exponent", m.exponent}, {"lhs", m.lhs}, {"rhs", m.rhs}};
        }
        ctx.failed = !report.pass;
        ctx.summary = report.pass ? "PASS" : "FAIL";
    } else if (action == "check-p1") {
        if (words.size() != 1) {
            throw ParseError("check-p1 takes no arguments");
        }
        const auto report = check_p1_extendable(d, orders);
        ctx.lines.push_back(report.to_string());
        ctx.result = {{"pass", report.pass}, {"bound", report.bound}};
        if (!report.pass) {
            ctx.result["first_failing_order"] = *report.first_failing_order;
            ctx.result["offending"] = report.offending;
            ctx.result["value"] = report.failing_value;
        }
        ctx.failed = !report.pass;
        ctx.summary = report.pass ? "PASS" : "FAIL";
    } else {
        throw ParseError("unknown deriv action '" + action + "'");
    }
    return ctx.finish();
}

// ---------------------------------------------------------------------------
// repro

struct Check {
    Context& ctx;
    void operator()(bool ok, const std::string& label, const std::string& detail = {}) {
        ctx.lines.push_back(std::string(ok ? "PASS " : "FAIL ") + label + (detail.empty() ? "" : ": " + detail));
        ctx.result["checks"].push_back({{"label", label}, {"pass", ok}});
        ctx.failed = ctx.failed || !ok;
    }
};

const std::vector<std::string> kHondaTable = {"1", "t^2", "0", "t^6 + t^12", "0", "t^4", "0"};

HSDerivation<PrimeField> honda22_derivation() {
    const auto law = honda_law(2, 2, 17);
    return canonical_derivation(law, 8, default_window(8, 4));
}

void repro_honda_table(Context& ctx) {
    Check check{ctx};
    const PrimeField f2(2);
    const auto law = honda_law(2, 2, 17);
    const auto d = canonical_derivation(law, 8, default_window(8, 4));
    for (std::size_t n = 1; n < 8; ++n) {
        const auto expected = parse_laurent(f2, kHondaTable[n - 1]);
        const auto& actual = d.image(n);
        check(actual == expected, "D_" + std::to_string(n) + "(t) = " + to_string(actual),
              actual == expected ? "" : diff_monomials(expected, actual));
    }
    const auto report = check_f_iterativity(d, truncate(law, 3));
    check(report.pass, "F_2[3]-iterativity", report.to_string());
}

void repro_inverse_of_t(Context& ctx) {
    Check check{ctx};
    const PrimeField f2(2);
    const auto d = honda22_derivation();
    const auto expected = parse_laurent(f2, "t^10 + t^4 + t + t^-2 + t^-5");
    const auto value = hs_apply(d, Poly::t_power(f2, -1), 4);
    check(value == expected, "D_4(1/t) = " + to_string(value), value == expected ? "" : diff_monomials(expected, value));
    const auto recursion = hs_inverse_image(d, 5)[4];
    check(recursion == value, "recursion through D_n(t * 1/t) = 0 agrees");
    const auto report = check_p1_extendable(d, 8);
    const bool located = !report.pass && report.first_failing_order == 4 &&
                         report.offending == std::vector<std::string>{"t^10", "t^4", "t"};
    check(located, "k[1/t] not preserved", report.to_string());
}

void repro_p1_preservation(Context& ctx) {
    Check check{ctx};
    for (std::uint64_t p : {2, 3, 5}) {
        const PrimeField field(p);
        const auto window = default_window(16, 1);
        const auto ga = canonical_derivation(additive_law(field, 16), 16, window);
        const auto gm = canonical_derivation(multiplicative_law(field, 16), 16, window);
        const auto ra = check_p1_extendable(ga, 16);
        const auto rm = check_p1_extendable(gm, 16);
        check(ra.pass, "G_a over F_" + std::to_string(p) + " preserves k[1/t]", ra.to_string());
        check(rm.pass, "G_m over F_" + std::to_string(p) + " preserves k[1/t]", rm.to_string());
    }
}

void repro_heights(Context& ctx) {
    Check check{ctx};
    for (std::uint64_t p : {2, 3, 5}) {
        const auto h = height(multiplicative_law(PrimeField(p), p + 1));
        check(h.is_finite() && h.height == 1, "multiplicative over F_" + std::to_string(p), h.to_string());
        const auto a = height(additive_law(PrimeField(p), p + 1));
        check(!a.is_finite(), "additive over F_" + std::to_string(p), a.to_string());
    }
    for (auto [p, hh] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
        const auto n = checked_power(p, hh) + 1;
        const auto h = height(honda_law(p, hh, n));
        check(h.is_finite() && h.height == hh,
              "honda:" + std::to_string(p) + ":" + std::to_string(hh) + " at N=" + std::to_string(n), h.to_string());
    }
}

Report cmd_repro(const std::string& name) {
    Context ctx;
    ctx.command = "repro";
    ctx.parameters = {{"name", name}};
    ctx.result["checks"] = json::array();
    if (name == "example-4.5") {
        repro_honda_table(ctx);
    } else if (name == "example-3.6") {
        repro_inverse_of_t(ctx);
    } else if (name == "theorem-3.1") {
        repro_p1_preservation(ctx);
    } else if (name == "heights") {
        repro_heights(ctx);
    } else {
        throw ParseError("unknown repro target '" + name + "' (example-3.6, example-4.5, theorem-3.1, heights)");
    }
    ctx.summary = ctx.failed ? "FAIL" : "PASS";
    ctx.lines.push_back(ctx.summary);
    return ctx.finish();
}

Report error_report(int code, const std::string& message) {
    Report r;
    r.exit_code = code;
    r.text = "error: " + message + "\n";
    r.json = {{"error", message}, {"summary", "ERROR"}};
    return r;
}

} // namespace

LawSpec parse_descriptor(const std::string& descriptor) {
    const auto parts = split(descriptor, ':');
    if (parts.empty()) {
        throw ParseError("empty law descriptor");
    }
    LawSpec spec{LawSpec::Kind::additive, 2, 0};
    const auto& name = parts[0];
    if (name == "additive" || name == "multiplicative") {
        spec.kind = name == "additive" ? LawSpec::Kind::additive : LawSpec::Kind::multiplicative;
        if (parts.size() > 2) {
            throw ParseError("expected '" + name + "' or '" + name + ":p'");
        }
        if (parts.size() == 2) {
            spec.p = parse_uint(parts[1], "prime");
        }
    } else if (name == "honda") {
        if (parts.size() != 3) {
            throw ParseError("expected 'honda:p:h'");
        }
        spec.kind = LawSpec::Kind::honda;
        spec.p = parse_uint(parts[1], "prime");
        spec.h = static_cast<unsigned>(parse_uint(parts[2], "height"));
        if (spec.h == 0) {
            throw ParseError("Honda height h must be at least 1");
        }
    } else {
        throw ParseError("unknown law '" + name + "' (additive, multiplicative, honda:p:h)");
    }
    if (!is_prime(spec.p)) {
        throw ParseError(std::to_string(spec.p) + " is not prime");
    }
    return spec;
}

FormalGroupLaw<PrimeField> build_law(const LawSpec& spec, std::size_t precision) {
    if (precision < 2) {
        throw ParseError("--deg must be at least 2");
    }
    const PrimeField field(spec.p);
    switch (spec.kind) {
    case LawSpec::Kind::additive:
        return additive_law(field, precision);
    case LawSpec::Kind::multiplicative:
        return multiplicative_law(field, precision);
    case LawSpec::Kind::honda:
        return honda_law(spec.p, spec.h, precision);
    }
    throw ParseError("unreachable law kind");
}

Report run(const std::vector<std::string>& args) {
    CLI::App app{"Formal group laws and Hasse-Schmidt derivations over F_p"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit the full report as JSON")->configurable(false);
    app.fallthrough();

    std::string descriptor;
    std::vector<std::string> words;
    std::size_t precision = 0;
    std::size_t probe_precision = 0;
    std::size_t orders = 8;
    std::string window_text;

    auto* fgl = app.add_subcommand("fgl", "Build and inspect a formal group law");
    fgl->add_option("law", descriptor, "additive[:p] | multiplicative[:p] | honda:p:h (p defaults to 2)")->required();
    fgl->add_option("action", words, "build | check | height | truncate M | inverse | coeff N")->required();
    fgl->add_option("--deg", precision, "Series precision N (total degree), default 8");
    fgl->add_option("--deg2", probe_precision, "Second precision N' for 'coeff', default 2N");

    auto* deriv = app.add_subcommand("deriv", "Canonical Hasse-Schmidt derivation of a law");
    deriv->add_option("law", descriptor, "additive[:p] | multiplicative[:p] | honda:p:h")->required();
    deriv->add_option("action", words,
                      "canonical | apply Q N | inverse-image | check-iterative [M] | check-p1")
        ->required();
    deriv->add_option("--orders", orders, "Order bound B (D_0..D_{B-1}), default 8");
    deriv->add_option("--deg", precision, "Series precision N, default 2B+1");
    deriv->add_option("--window", window_text,
                      "Laurent degree window LO:HI, default -(B+1):B*g with g = p^h for honda, 1 otherwise");

    std::string target;
    auto* repro = app.add_subcommand("repro", "Re-run a pinned scenario and compare with embedded values");
    repro->add_option("name", target, "example-3.6 | example-4.5 | theorem-3.1 | heights")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return Report{kOk, app.help(), json::object()};
    } catch (const CLI::CallForAllHelp&) {
        return Report{kOk, app.help("", CLI::AppFormatMode::All), json::object()};
    } catch (const CLI::ParseError& e) {
        return error_report(kUsage, e.what());
    }

    Report report;
    try {
        if (fgl->parsed()) {
            report = cmd_fgl(descriptor, precision == 0 ? 8 : precision, words, probe_precision);
        } else if (deriv->parsed()) {
            std::optional<DegreeWindow> window;
            if (!window_text.empty()) {
                window = parse_window(window_text);
            }
            report = cmd_deriv(descriptor, orders, precision, window, words);
        } else {
            report = cmd_repro(target);
        }
    } catch (const ParseError& e) {
        return error_report(kUsage, e.what());
    } catch (const NotPrime& e) {
        return error_report(kUsage, e.what());
    } catch (const Error& e) {
        return error_report(kInternal, e.what());
    }
    if (as_json) {
        report.text = dump(report.json) + "\n";
    }
    return report;
}

} // namespace hsfgl::cli
