#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <string>
#include <sys/types.h>
#include <vector>

#include "ude/core.hpp"

namespace ude {

// Line-oriented channel to a child process over its stdin/stdout. One request
// line in, one reply line out. Calls are serialized.
class SubprocessChannel {
public:
    explicit SubprocessChannel(std::vector<std::string> argv);
    ~SubprocessChannel();

    SubprocessChannel(const SubprocessChannel&) = delete;
    SubprocessChannel& operator=(const SubprocessChannel&) = delete;

    struct Reply {
        std::string line;
        std::size_t number;  // 1-based request count
    };

    Reply request(const std::string& line);
    std::size_t requests() const { return requests_; }

private:
    std::string read_line();

    pid_t pid_ = -1;
    int fd_ = -1;
    std::string buffer_;
    std::size_t requests_ = 0;
    std::mutex mutex_;
};

// Parses "f g1 .. gm h1 .. hq"; throws EvaluationError naming the line.
Evaluation parse_reply(const std::string& line, std::size_t n_ineq, std::size_t n_eq,
                       std::size_t request_number);

// Whitespace-separated decision vector, round-trip precision.
std::string format_request(std::span<const double> x);

// Problem described by a JSON file:
//   {"name": ..., "dimension": D, "lower_bounds": [...], "upper_bounds": [...],
//    "n_ineq": m, "n_eq": q, "eq_tol": 1e-4, "command": ["prog", "arg", ...]}
// A relative program path is resolved against the file's directory.
ProblemSpec subprocess_evaluator(const std::string& spec_file);

}  // namespace ude
