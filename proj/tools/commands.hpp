#ifndef HSFGL_TOOLS_COMMANDS_HPP
#define HSFGL_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsfgl/fgl.hpp"

namespace hsfgl::cli {

/// Exit codes: 0 success or PASS, 1 a mathematical FAIL, 2 usage or parse
/// error, 3 precision/window/internal error.
enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

struct Report {
    int exit_code = kOk;
    /// Text form of the result, one item per line.
    std::string text;
    /// Full report: command, parameters, result, summary, bounds used.
    nlohmann::json json;
};

struct LawSpec {
    enum class Kind { additive, multiplicative, honda };
    Kind kind;
    std::uint64_t p;
    unsigned h; // Honda only

    /// p^h for Honda laws, 1 otherwise; drives the default degree window.
    std::uint64_t growth() const;
};

/// "additive[:p]", "multiplicative[:p]" or "honda:p:h"; p defaults to 2.
LawSpec parse_descriptor(const std::string& descriptor);

FormalGroupLaw<PrimeField> build_law(const LawSpec& spec, std::size_t precision);

/// Runs one invocation; `args` excludes the program name.
Report run(const std::vector<std::string>& args);

} // namespace hsfgl::cli

#endif
