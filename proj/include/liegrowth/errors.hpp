#pragma once

#include <stdexcept>
#include <string>

namespace liegrowth {

// Process-level exit codes used by the CLI.
enum class ExitCode : int {
    ok = 0,
    validation = 1,  // bad arguments / config
    stage = 2,       // a pipeline stage failed (usually: horizon too small)
    assertion = 3,   // an invariant that should hold was violated
};

// Bad user input: malformed config, out-of-range argument, missing sample.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation could not proceed; carries the stage name and a remediation
// hint (usually "raise L" or "raise N").
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what,
               const std::string& hint = {})
        : std::runtime_error(stage + ": " + what +
                             (hint.empty() ? "" : " (" + hint + ")")),
          stage_(stage) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// An invariant the implementation relies on failed; would indicate a bug
// here, not in the mathematics.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace liegrowth
