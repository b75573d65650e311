#pragma once

// Bounded compile–fix loop. Each pass renders the document, compiles it in
// an isolated workspace, and hands the parsed diagnostics to the fix engine.
// Zero-error passes emit artifacts; zero-progress passes terminate early.
// Total compiler invocations per session: at most max_steps + 1.

#include <filesystem>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "jstitch/compiler_bridge.hpp"
#include "jstitch/diagnostics.hpp"
#include "jstitch/fix_engine.hpp"
#include "jstitch/source_model.hpp"

namespace jstitch {

struct SessionConfig {
  int max_steps = 10;
  CompilerConfig compiler;
  bool keep_workspace = false;
  bool emit_ledger = false;
  std::filesystem::path out_dir;  // artifact location; "" = skip writing
  std::string snippet_name = "snippet";
};

enum class SessionStatus { Fixed, FailedToFix, Aborted };

inline const char* to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::Fixed: return "fixed";
    case SessionStatus::FailedToFix: return "failed_to_fix";
    case SessionStatus::Aborted: return "aborted";
  }
  return "?";
}

struct SessionReport {
  SessionStatus status = SessionStatus::FailedToFix;
  bool success = false;
  int passes_used = 0;
  std::vector<int> errors_per_pass;
  int residual_errors = 0;
  int statement_count = 0;
  long long total_wall_time_ms = 0;
  std::vector<long long> per_pass_wall_time_ms;
  std::vector<std::string> artifact_paths;
  std::vector<FixAction> ledger;
  std::vector<std::string> defer_reasons;
  std::vector<std::string> residual_headlines;
  std::string abort_reason;
  std::string final_source;       // best-effort render, always populated
  std::string fixed_source_path;  // written when out_dir is set
  std::string snippet_name;
  int compiler_invocations = 0;
};

namespace driver_detail {

// File name javac accepts: first public class, else first class, else a
// fixed fallback.
inline std::string main_file_name(const std::string& source) {
  std::vector<detail::JToken> toks = detail::java_lex(source);
  int depth = 0;
  bool pending_public = false;
  std::string first_class;
  for (size_t i = 0; i < toks.size(); i++) {
    const detail::JToken& t = toks[i];
    if (t.kind == detail::JTok::Punct) {
      if (t.text == "{") depth++;
      else if (t.text == "}") depth--;
      continue;
    }
    if (depth != 0) continue;
    if (t.kind == detail::JTok::Keyword) {
      if (t.text == "public") pending_public = true;
      else if (t.text == "class") {
        if (i + 1 < toks.size() && toks[i + 1].kind == detail::JTok::Ident) {
          const std::string& name = toks[i + 1].text;
          if (pending_public) return name + ".java";
          if (first_class.empty()) first_class = name;
        }
        pending_public = false;
      } else if (!detail::is_modifier_keyword(t.text)) {
        pending_public = false;
      }
    }
  }
  return (first_class.empty() ? std::string("Snippet") : first_class) + ".java";
}

inline void clear_java_sources(const std::filesystem::path& dir) {
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".java" ||
        entry.path().extension() == ".class")
      std::filesystem::remove(entry.path());
  }
}

}  // namespace driver_detail

// emit_ir: compiles an already-clean source and places the fixed file plus
// its bytecode at the output location. Returns the artifact paths
// (fixed source first).
inline std::vector<std::string> emit_ir(const std::string& final_source,
                                        const SessionConfig& cfg,
                                        CompileOutcome* outcome_out = nullptr) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (!std::filesystem::is_directory(cfg.out_dir))
    throw IOFailure("output location is not writable: " +
                    cfg.out_dir.string());

  std::filesystem::path work = create_workspace("ir");
  struct Cleanup {
    std::filesystem::path dir;
    ~Cleanup() {
      std::error_code e;
      std::filesystem::remove_all(dir, e);
    }
  } cleanup{work};

  write_file(work / driver_detail::main_file_name(final_source), final_source);
  CompileOutcome outcome = compile(work, cfg.compiler);
  if (outcome_out) *outcome_out = outcome;
  if (outcome.exit_status != 0)
    throw IOFailure("final source failed to compile during IR emission");

  std::vector<std::string> artifacts;
  std::filesystem::path fixed =
      cfg.out_dir / (cfg.snippet_name + ".fixed.java");
  write_file(fixed, final_source);
  artifacts.push_back(fixed.string());
  for (const std::string& cls : outcome.artifact_paths) {
    std::filesystem::path src(cls);
    std::filesystem::path dst = cfg.out_dir / src.filename();
    std::filesystem::copy_file(
        src, dst, std::filesystem::copy_options::overwrite_existing, ec);
    if (ec) throw IOFailure("cannot copy artifact to " + dst.string());
    artifacts.push_back(dst.string());
  }
  return artifacts;
}

// run_session: preprocess, then loop {compile; fix} up to max_steps times.
inline SessionReport run_session(const std::string& input,
                                 const SessionConfig& cfg) {
  if (input.empty()) throw UnclassifiableInput("empty input");
  resolve_compiler(cfg.compiler);  // abort before any loop iteration

  SessionReport report;
  report.snippet_name = cfg.snippet_name;
  report.statement_count = detail::count_statements(input);

  SnippetDocument doc = SnippetDocument::preprocess(input);

  std::filesystem::path work = create_workspace("run");
  struct Cleanup {
    std::filesystem::path dir;
    bool keep;
    ~Cleanup() {
      if (keep) return;
      std::error_code e;
      std::filesystem::remove_all(dir, e);
    }
  } cleanup{work, cfg.keep_workspace};

  std::vector<Diagnostic> last_diags;
  try {
    for (int pass = 1; pass <= cfg.max_steps; pass++) {
      Rendered rendered = doc.render_with_map();
      driver_detail::clear_java_sources(work);
      write_file(work / driver_detail::main_file_name(rendered.text),
                 rendered.text);
      CompileOutcome outcome = compile(work, cfg.compiler);
      report.compiler_invocations++;
      report.passes_used = pass;
      report.errors_per_pass.push_back(outcome.reported_error_count);
      report.per_pass_wall_time_ms.push_back(outcome.wall_time_ms);

      if (outcome.exit_status == 0) {
        report.status = SessionStatus::Fixed;
        report.success = true;
        report.residual_errors = 0;
        last_diags.clear();
        break;
      }

      last_diags = parse_diagnostics(outcome.raw_diagnostics);
      report.residual_errors = outcome.reported_error_count;
      if (pass == cfg.max_steps) break;  // budget exhausted

      PassOutcome fixes = fix_all(doc, last_diags, rendered);
      for (const std::string& r : fixes.defer_reasons)
        report.defer_reasons.push_back(r);
      if (fixes.applied == 0) {
        report.status = SessionStatus::FailedToFix;
        break;  // zero progress: every remaining action deferred or deduped
      }
    }
  } catch (const CompilerTimeout& e) {
    report.status = SessionStatus::Aborted;
    report.abort_reason = e.what();
  } catch (const CompilerCrash& e) {
    report.status = SessionStatus::Aborted;
    report.abort_reason = e.what();
  }

  report.final_source = doc.render();
  report.ledger = doc.ledger();
  for (const Diagnostic& d : last_diags)
    report.residual_headlines.push_back(d.message);

  if (report.success && !cfg.out_dir.empty()) {
    CompileOutcome ir_outcome;
    report.artifact_paths = emit_ir(report.final_source, cfg, &ir_outcome);
    report.compiler_invocations++;
    report.per_pass_wall_time_ms.push_back(ir_outcome.wall_time_ms);
  } else if (!cfg.out_dir.empty()) {
    // failure still writes the best-effort source for manual follow-up
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    std::filesystem::path fixed =
        cfg.out_dir / (cfg.snippet_name + ".fixed.java");
    write_file(fixed, report.final_source);
    report.fixed_source_path = fixed.string();
  }
  if (!report.artifact_paths.empty())
    report.fixed_source_path = report.artifact_paths.front();

  report.total_wall_time_ms =
      std::accumulate(report.per_pass_wall_time_ms.begin(),
                      report.per_pass_wall_time_ms.end(), 0LL);
  return report;
}

}  // namespace jstitch
