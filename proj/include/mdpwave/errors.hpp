#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mdpwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or variable was referenced but never bound.
class UnboundSymbol : public Error {
 public:
  explicit UnboundSymbol(std::string symbol)
      : Error("unbound symbol '" + symbol + "'"), symbol_(std::move(symbol)) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

/// Numeric evaluation left the real domain. `subtree()` holds the prefix
/// form of the node that failed.
class DomainError : public Error {
 public:
  DomainError(const std::string& what, std::string subtree)
      : Error(what + " at " + subtree), subtree_(std::move(subtree)) {}
  const std::string& subtree() const noexcept { return subtree_; }

 private:
  std::string subtree_;
};

class ConstraintViolation : public Error {
 public:
  explicit ConstraintViolation(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "constraint violation:";
    for (const auto& s : v) out += " [" + s + "]";
    return out;
  }
  std::vector<std::string> violations_;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class Unclassifiable : public Error {
 public:
  using Error::Error;
};

class SampleAtPole : public Error {
 public:
  using Error::Error;
};

class AllPointsSkipped : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

}  // namespace mdpwave
