#pragma once

// Minimal POSIX subprocess runner: argv exec, separate stdout/stderr
// capture, hard timeout via SIGKILL. Linux/macOS only.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <string>
#include <vector>

namespace jstitch::detail {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  bool signaled = false;
  bool spawn_failed = false;
  std::string out;
  std::string err;
  long long wall_ms = 0;
};

inline ProcessResult run_process(const std::vector<std::string>& argv,
                                 const std::string& cwd, long long timeout_ms,
                                 const std::vector<std::string>& extra_env = {}) {
  ProcessResult result;
  int out_pipe[2], err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    result.spawn_failed = true;
    return result;
  }

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    result.spawn_failed = true;
    return result;
  }
  if (pid == 0) {
    // child
    if (!cwd.empty() && chdir(cwd.c_str()) != 0) _exit(127);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    close(out_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[0]);
    close(err_pipe[1]);
    for (const std::string& kv : extra_env) {
      std::string copy = kv;
      size_t eq = copy.find('=');
      if (eq != std::string::npos) {
        std::string key = copy.substr(0, eq);
        setenv(key.c_str(), copy.c_str() + eq + 1, 1);
      }
    }
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  fcntl(err_pipe[0], F_SETFL, O_NONBLOCK);

  bool out_open = true, err_open = true;
  while (out_open || err_open) {
    auto now = std::chrono::steady_clock::now();
    long long elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(now - start)
            .count();
    if (timeout_ms > 0 && elapsed >= timeout_ms) {
      result.timed_out = true;
      kill(pid, SIGKILL);
      break;
    }
    struct pollfd fds[2];
    nfds_t n = 0;
    if (out_open) fds[n++] = {out_pipe[0], POLLIN, 0};
    if (err_open) fds[n++] = {err_pipe[0], POLLIN, 0};
    long long wait_ms =
        timeout_ms > 0 ? std::min(200LL, timeout_ms - elapsed) : 200LL;
    int rc = poll(fds, n, static_cast<int>(wait_ms));
    if (rc < 0 && errno != EINTR) break;
    char buf[4096];
    auto drain = [&](int fd, std::string& sink, bool& open_flag) {
      while (true) {
        ssize_t got = read(fd, buf, sizeof buf);
        if (got > 0) {
          sink.append(buf, static_cast<size_t>(got));
        } else if (got == 0) {
          open_flag = false;
          break;
        } else {
          break;  // EAGAIN or error
        }
      }
    };
    if (out_open) drain(out_pipe[0], result.out, out_open);
    if (err_open) drain(err_pipe[0], result.err, err_open);
  }

  // drain anything buffered after exit/kill
  char buf[4096];
  ssize_t got;
  while ((got = read(out_pipe[0], buf, sizeof buf)) > 0)
    result.out.append(buf, static_cast<size_t>(got));
  while ((got = read(err_pipe[0], buf, sizeof buf)) > 0)
    result.err.append(buf, static_cast<size_t>(got));
  close(out_pipe[0]);
  close(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  auto end = std::chrono::steady_clock::now();
  result.wall_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
    if (result.exit_code == 127 && result.out.empty() && result.err.empty())
      result.spawn_failed = true;
  } else if (WIFSIGNALED(status)) {
    result.signaled = true;
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

}  // namespace jstitch::detail
