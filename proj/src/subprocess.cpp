#include "ude/subprocess.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"

extern char** environ;

namespace ude {
namespace {

std::string errno_text()
{
    return std::strerror(errno);
}

}  // namespace

SubprocessChannel::SubprocessChannel(std::vector<std::string> argv)
{
    if (argv.empty())
        throw ConfigError("subprocess evaluator: empty command");

    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
        throw EvaluationError("subprocess evaluator: socketpair failed: " + errno_text());

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);

    std::vector<char*> args;
    for (auto& a : argv)
        args.push_back(a.data());
    args.push_back(nullptr);

    const int rc = ::posix_spawnp(&pid_, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    ::close(sv[1]);
    if (rc != 0) {
        ::close(sv[0]);
        throw EvaluationError("subprocess evaluator: cannot start '" + argv[0] +
                              "': " + std::strerror(rc));
    }
    fd_ = sv[0];
}

SubprocessChannel::~SubprocessChannel()
{
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_WR);
        ::close(fd_);
    }
    if (pid_ > 0) {
        int status = 0;
        for (int i = 0; i < 100; ++i) {
            if (::waitpid(pid_, &status, WNOHANG) != 0)
                return;
            std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
    }
}

std::string SubprocessChannel::read_line()
{
    for (;;) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            return line;
        }
        char chunk[4096];
        const ssize_t got = ::recv(fd_, chunk, sizeof chunk, 0);
        if (got == 0)
            throw EvaluationError("subprocess evaluator: child closed its output (request " +
                                  std::to_string(requests_) + ")");
        if (got < 0) {
            if (errno == EINTR)
                continue;
            throw EvaluationError("subprocess evaluator: read failed: " + errno_text());
        }
        buffer_.append(chunk, static_cast<std::size_t>(got));
    }
}

SubprocessChannel::Reply SubprocessChannel::request(const std::string& line)
{
    std::lock_guard lock(mutex_);
    const std::size_t number = ++requests_;
    std::string payload = line + '\n';
    std::size_t sent = 0;
    while (sent < payload.size()) {
        const ssize_t n = ::send(fd_, payload.data() + sent, payload.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw EvaluationError("subprocess evaluator: write failed (request " +
                                  std::to_string(requests_) + "): " + errno_text());
        }
        sent += static_cast<std::size_t>(n);
    }
    return Reply{read_line(), number};
}

std::string format_request(std::span<const double> x)
{
    std::string out;
    char buf[32];
    for (std::size_t j = 0; j < x.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", x[j]);
        if (j)
            out += ' ';
        out += buf;
    }
    return out;
}

Evaluation parse_reply(const std::string& line, std::size_t n_ineq, std::size_t n_eq,
                       std::size_t request_number)
{
    auto malformed = [&](const std::string& why) {
        return EvaluationError("subprocess evaluator: malformed reply to request " +
                               std::to_string(request_number) + " (" + why + "): '" + line + "'");
    };

    std::vector<double> fields;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        double v = 0.0;
        const char* first = token.data();
        const char* last = first + token.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last)
            throw malformed("field " + std::to_string(fields.size()) + " is not a number");
        fields.push_back(v);
    }
    const std::size_t expected = 1 + n_ineq + n_eq;
    if (fields.size() != expected)
        throw malformed("expected " + std::to_string(expected) + " fields, got " +
                        std::to_string(fields.size()));

    Evaluation e;
    e.f = fields[0];
    e.g.assign(fields.begin() + 1, fields.begin() + 1 + static_cast<std::ptrdiff_t>(n_ineq));
    e.h.assign(fields.begin() + 1 + static_cast<std::ptrdiff_t>(n_ineq), fields.end());
    return e;
}

ProblemSpec subprocess_evaluator(const std::string& spec_file)
{
    namespace fs = std::filesystem;
    using nlohmann::json;

    std::ifstream in(spec_file);
    if (!in)
        throw ConfigError("cannot open problem file '" + spec_file + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("problem file '" + spec_file + "' is not valid JSON: " + e.what());
    }

    ProblemSpec spec;
    std::vector<std::string> argv;
    try {
        spec.name = j.value("name", fs::path(spec_file).stem().string());
        j.at("dimension").get_to(spec.dimension);
        j.at("lower_bounds").get_to(spec.lower_bounds);
        j.at("upper_bounds").get_to(spec.upper_bounds);
        spec.n_ineq = j.value("n_ineq", std::size_t{0});
        spec.n_eq = j.value("n_eq", std::size_t{0});
        spec.eq_tol = j.value("eq_tol", kDefaultEqTol);
        const json& command = j.at("command");
        if (command.is_string())
            argv.push_back(command.get<std::string>());
        else
            command.get_to(argv);
    } catch (const json::exception& e) {
        throw ConfigError("problem file '" + spec_file + "': " + e.what());
    }
    if (argv.empty())
        throw ConfigError("problem file '" + spec_file + "': empty command");

    const fs::path program(argv[0]);
    if (program.is_relative() && argv[0].find('/') != std::string::npos)
        argv[0] = (fs::absolute(spec_file).parent_path() / program).lexically_normal().string();

    auto channel = std::make_shared<SubprocessChannel>(argv);
    const std::size_t n_ineq = spec.n_ineq;
    const std::size_t n_eq = spec.n_eq;
    spec.evaluate = [channel, n_ineq, n_eq](std::span<const double> x) {
        const auto reply = channel->request(format_request(x));
        return parse_reply(reply.line, n_ineq, n_eq, reply.number);
    };
    spec.validate();
    return spec;
}

}  // namespace ude
