#include "vereval/util/subprocess.hpp"

#include "vereval/errors.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <thread>

extern char** environ;

namespace vereval::util {

namespace {

struct Pipe {
    int rd = -1;
    int wr = -1;
    Pipe() {
        int fds[2];
        if (::pipe2(fds, O_CLOEXEC) != 0) throw IoError(std::string("pipe2: ") + std::strerror(errno));
        rd = fds[0];
        wr = fds[1];
    }
    ~Pipe() {
        close_rd();
        close_wr();
    }
    void close_rd() {
        if (rd >= 0) ::close(rd);
        rd = -1;
    }
    void close_wr() {
        if (wr >= 0) ::close(wr);
        wr = -1;
    }
};

void append_limited(std::string& dst, const char* buf, std::size_t n, std::size_t limit, bool& truncated) {
    if (dst.size() >= limit) {
        truncated = true;
        return;
    }
    const std::size_t room = limit - dst.size();
    if (n > room) {
        truncated = true;
        n = room;
    }
    dst.append(buf, n);
}

}  // namespace

std::optional<std::filesystem::path> find_program(const std::string& name) {
    namespace fs = std::filesystem;
    if (name.empty()) return std::nullopt;
    if (name.find('/') != std::string::npos) {
        if (::access(name.c_str(), X_OK) == 0) return fs::path(name);
        return std::nullopt;
    }
    const char* path_env = std::getenv("PATH");
    std::string path = path_env ? path_env : "/usr/local/bin:/usr/bin:/bin";
    std::size_t start = 0;
    while (start <= path.size()) {
        auto colon = path.find(':', start);
        if (colon == std::string::npos) colon = path.size();
        fs::path dir = path.substr(start, colon - start);
        if (dir.empty()) dir = ".";
        fs::path cand = dir / name;
        std::error_code ec;
        if (fs::is_regular_file(cand, ec) && ::access(cand.c_str(), X_OK) == 0) return cand;
        start = colon + 1;
    }
    return std::nullopt;
}

ProcessResult run_process(const std::vector<std::string>& argv, const ProcessOptions& opts) {
    using clock = std::chrono::steady_clock;
    ProcessResult result;
    if (argv.empty()) {
        result.spawn_failed = true;
        result.err = "empty command";
        return result;
    }

    Pipe out_pipe, err_pipe;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    posix_spawn_file_actions_adddup2(&actions, out_pipe.wr, STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err_pipe.wr, STDERR_FILENO);
    if (!opts.cwd.empty()) {
        posix_spawn_file_actions_addchdir_np(&actions, opts.cwd.c_str());
    }

    posix_spawnattr_t attr;
    posix_spawnattr_init(&attr);
    sigset_t defaults;
    sigemptyset(&defaults);
    sigaddset(&defaults, SIGPIPE);
    posix_spawnattr_setsigdefault(&attr, &defaults);
    posix_spawnattr_setpgroup(&attr, 0);
    posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETPGROUP | POSIX_SPAWN_SETSIGDEF);

    std::vector<char*> cargv;
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    std::vector<std::string> env_storage;
    std::vector<char*> cenv;
    char** envp = environ;
    if (!opts.extra_env.empty()) {
        for (char** e = environ; *e != nullptr; ++e) env_storage.emplace_back(*e);
        for (const auto& e : opts.extra_env) env_storage.push_back(e);
        for (auto& e : env_storage) cenv.push_back(e.data());
        cenv.push_back(nullptr);
        envp = cenv.data();
    }

    const auto start = clock::now();
    pid_t pid = -1;
    int rc = ::posix_spawnp(&pid, cargv[0], &actions, &attr, cargv.data(), envp);
    // A freshly written binary can stay busy while a concurrent child still holds its fd.
    for (int attempt = 0; rc == ETXTBSY && attempt < 50; ++attempt) {
        std::this_thread::sleep_for(std::chrono::milliseconds(20));
        rc = ::posix_spawnp(&pid, cargv[0], &actions, &attr, cargv.data(), envp);
    }
    posix_spawn_file_actions_destroy(&actions);
    posix_spawnattr_destroy(&attr);
    out_pipe.close_wr();
    err_pipe.close_wr();

    if (rc != 0) {
        result.spawn_failed = true;
        result.err = std::string("cannot execute '") + argv[0] + "': " + std::strerror(rc);
        return result;
    }

    std::optional<clock::time_point> deadline;
    if (opts.timeout) deadline = start + *opts.timeout;

    char buf[8192];
    bool killed = false;
    while (out_pipe.rd >= 0 || err_pipe.rd >= 0) {
        int wait_ms = -1;
        if (deadline && !killed) {
            auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - clock::now()).count();
            if (left <= 0) {
                ::kill(-pid, SIGKILL);
                killed = true;
                result.timed_out = true;
                // Descendants that escaped the group may keep the pipes open.
                wait_ms = 200;
            } else {
                wait_ms = static_cast<int>(left);
            }
        } else if (killed) {
            wait_ms = 200;
        }

        pollfd fds[2];
        nfds_t nfds = 0;
        if (out_pipe.rd >= 0) fds[nfds++] = {out_pipe.rd, POLLIN, 0};
        if (err_pipe.rd >= 0) fds[nfds++] = {err_pipe.rd, POLLIN, 0};
        const int pr = ::poll(fds, nfds, wait_ms);
        if (pr < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (pr == 0) {
            if (killed) break;
            continue;
        }
        for (nfds_t i = 0; i < nfds; ++i) {
            if (fds[i].revents == 0) continue;
            const bool is_out = fds[i].fd == out_pipe.rd;
            const ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
            if (n > 0) {
                if (is_out) {
                    append_limited(result.out, buf, static_cast<std::size_t>(n), opts.output_limit, result.out_truncated);
                } else {
                    bool dummy = false;
                    append_limited(result.err, buf, static_cast<std::size_t>(n), opts.output_limit, dummy);
                }
            } else if (n == 0 || (n < 0 && errno != EINTR && errno != EAGAIN)) {
                if (is_out) out_pipe.close_rd(); else err_pipe.close_rd();
            }
        }
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    // Reap the rest of the group if the leader exited first.
    if (killed) ::kill(-pid, SIGKILL);

    result.wall_seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (WIFEXITED(status)) {
        result.exited = true;
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.term_signal = WTERMSIG(status);
    }
    return result;
}

}  // namespace vereval::util
