#pragma once

// Diagnostic records and OpenJDK-javac-compatible rendering.

#include <algorithm>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ast.hpp"

namespace minijavac {

struct Diag {
  Pos pos;
  std::string message;                 // headline after "error: "
  std::vector<std::string> details;    // already-formatted detail lines
  int seq = 0;
};

class DiagSink {
 public:
  explicit DiagSink(std::string file, const std::vector<std::string>* lines)
      : file_(std::move(file)), lines_(lines) {}

  void error(Pos pos, std::string message,
             std::vector<std::string> details = {}) {
    Diag d;
    d.pos = pos;
    d.message = std::move(message);
    d.details = std::move(details);
    d.seq = static_cast<int>(diags_.size());
    diags_.push_back(std::move(d));
  }

  bool empty() const { return diags_.empty(); }
  size_t count() const { return diags_.size(); }

  // javac block format (no summary line; the driver prints one total):
  //   <file>:<line>: error: <message>
  //   <source line>
  //   <caret>
  //   <detail lines>
  // Returns the number of blocks rendered (capped at max_errors).
  int render(std::ostream& os, int max_errors) {
    std::stable_sort(diags_.begin(), diags_.end(),
                     [](const Diag& a, const Diag& b) {
                       if (a.pos.line != b.pos.line) return a.pos.line < b.pos.line;
                       if (a.pos.col != b.pos.col) return a.pos.col < b.pos.col;
                       return a.seq < b.seq;
                     });
    int shown = 0;
    for (const Diag& d : diags_) {
      if (shown >= max_errors) break;
      shown++;
      os << file_ << ":" << d.pos.line << ": error: " << d.message << "\n";
      if (lines_ && d.pos.line >= 1 &&
          d.pos.line <= static_cast<int>(lines_->size())) {
        const std::string& src = (*lines_)[d.pos.line - 1];
        os << src << "\n";
        std::string caret;
        for (int i = 0; i + 1 < d.pos.col; i++) {
          char c = i < static_cast<int>(src.size()) ? src[i] : ' ';
          caret.push_back(c == '\t' ? '\t' : ' ');
        }
        caret.push_back('^');
        os << caret << "\n";
      }
      for (const std::string& det : d.details) os << det << "\n";
    }
    return shown;
  }

 private:
  std::string file_;
  const std::vector<std::string>* lines_;
  std::vector<Diag> diags_;
};

}  // namespace minijavac
