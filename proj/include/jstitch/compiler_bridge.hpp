#pragma once

// Isolated compilation workspaces and external compiler invocation. The
// compiler is any javac-compatible executable named by CompilerConfig;
// operations are stateless over their inputs, so concurrent sessions on
// distinct workspaces never interfere.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jstitch/detail/subprocess.hpp"
#include "jstitch/diagnostics.hpp"
#include "jstitch/errors.hpp"

namespace jstitch {

struct CompilerConfig {
  std::string compiler_path = "javac";
  std::vector<std::string> extra_flags;
  // one pass should see the whole error population, not javac's default 100
  int max_reported_errors = 10000;
  bool locale_override = true;  // force English-language diagnostics
  double timeout_seconds = 60.0;
};

struct CompileOutcome {
  int exit_status = -1;
  std::string raw_diagnostics;  // captured error stream, verbatim
  int reported_error_count = 0;
  std::vector<std::string> artifact_paths;
  long long wall_time_ms = 0;
};

namespace bridge_detail {

inline bool is_executable_file(const std::filesystem::path& p) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(p, ec)) return false;
  return ::access(p.c_str(), X_OK) == 0;
}

inline std::string search_path(const std::string& name) {
  const char* path = std::getenv("PATH");
  if (!path) return "";
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    std::filesystem::path candidate = std::filesystem::path(dir) / name;
    if (is_executable_file(candidate)) return candidate.string();
  }
  return "";
}

}  // namespace bridge_detail

// Resolves config.compiler_path to an executable; throws CompilerNotFound.
inline std::string resolve_compiler(const CompilerConfig& config) {
  if (config.max_reported_errors < 1)
    throw CompilerNotFound("max_reported_errors must be >= 1");
  if (config.timeout_seconds <= 0)
    throw CompilerNotFound("timeout must be positive");
  const std::string& p = config.compiler_path;
  if (p.empty()) throw CompilerNotFound("compiler path is empty");
  if (p.find('/') != std::string::npos) {
    if (bridge_detail::is_executable_file(p)) return p;
    throw CompilerNotFound("compiler is not an executable: " + p);
  }
  std::string found = bridge_detail::search_path(p);
  if (found.empty())
    throw CompilerNotFound("compiler not found on PATH: " + p);
  return found;
}

// Creates a fresh private workspace directory.
inline std::filesystem::path create_workspace(const std::string& tag = "s") {
  std::filesystem::path base = std::filesystem::temp_directory_path();
  static std::atomic<unsigned> counter{0};
  std::random_device rd;
  for (int attempt = 0; attempt < 64; attempt++) {
    std::filesystem::path dir =
        base / ("jstitch-" + tag + "-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter.fetch_add(1)) + "-" +
                std::to_string(rd() & 0xffff));
    std::error_code ec;
    if (std::filesystem::create_directory(dir, ec)) return dir;
  }
  throw IOFailure("cannot create workspace under " + base.string());
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOFailure("cannot write " + path.string());
  out << content;
  if (!out) throw IOFailure("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOFailure("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// compile(): invokes the external compiler on every .java file in the
// workspace. Never modifies the sources. Diagnostics come back verbatim.
inline CompileOutcome compile(const std::filesystem::path& workspace,
                              const CompilerConfig& config) {
  std::string compiler = resolve_compiler(config);

  std::vector<std::string> sources;
  for (const auto& entry : std::filesystem::directory_iterator(workspace)) {
    if (entry.path().extension() == ".java")
      sources.push_back(entry.path().filename().string());
  }
  std::sort(sources.begin(), sources.end());
  if (sources.empty())
    throw IOFailure("workspace has no .java sources: " + workspace.string());

  std::vector<std::string> argv;
  argv.push_back(compiler);
  if (config.locale_override) {
    argv.push_back("-J-Duser.language=en");
    argv.push_back("-J-Duser.country=US");
  }
  argv.push_back("-Xmaxerrs");
  argv.push_back(std::to_string(config.max_reported_errors));
  for (const std::string& f : config.extra_flags) argv.push_back(f);
  argv.push_back("-d");
  argv.push_back(".");
  for (const std::string& s : sources) argv.push_back(s);

  std::vector<std::string> env;
  if (config.locale_override) {
    env.push_back("LC_ALL=C");
    env.push_back("LANG=C");
  }

  detail::ProcessResult proc = detail::run_process(
      argv, workspace.string(),
      static_cast<long long>(config.timeout_seconds * 1000.0), env);

  if (proc.timed_out)
    throw CompilerTimeout("compiler exceeded " +
                          std::to_string(config.timeout_seconds) + "s in " +
                          workspace.string());
  if (proc.spawn_failed)
    throw CompilerNotFound("failed to execute compiler: " + compiler);

  CompileOutcome outcome;
  outcome.exit_status = proc.exit_code;
  outcome.raw_diagnostics = proc.err;
  outcome.wall_time_ms = proc.wall_ms;

  std::string_view trimmed = detail::trim(outcome.raw_diagnostics);
  if (proc.signaled || (proc.exit_code != 0 && trimmed.empty()))
    throw CompilerCrash("compiler failed without diagnostics (exit " +
                        std::to_string(proc.exit_code) + ")");

  if (auto summary = parse_error_summary(outcome.raw_diagnostics)) {
    outcome.reported_error_count = *summary;
  } else if (outcome.exit_status != 0) {
    outcome.reported_error_count =
        static_cast<int>(parse_diagnostics(outcome.raw_diagnostics).size());
  }

  for (const auto& entry : std::filesystem::directory_iterator(workspace)) {
    if (entry.path().extension() == ".class")
      outcome.artifact_paths.push_back(entry.path().string());
  }
  std::sort(outcome.artifact_paths.begin(), outcome.artifact_paths.end());
  return outcome;
}

}  // namespace jstitch
