#pragma once

#include <stdexcept>
#include <string>

namespace jstitch {

// Environment/session failures. Fix-path functions are total and never throw.

struct UnclassifiableInput : std::runtime_error {
  explicit UnclassifiableInput(const std::string& what)
      : std::runtime_error(what) {}
};

struct CompilerNotFound : std::runtime_error {
  explicit CompilerNotFound(const std::string& what)
      : std::runtime_error(what) {}
};

struct CompilerTimeout : std::runtime_error {
  explicit CompilerTimeout(const std::string& what)
      : std::runtime_error(what) {}
};

struct CompilerCrash : std::runtime_error {
  explicit CompilerCrash(const std::string& what) : std::runtime_error(what) {}
};

struct IOFailure : std::runtime_error {
  explicit IOFailure(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyCorpus : std::runtime_error {
  explicit EmptyCorpus(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jstitch
