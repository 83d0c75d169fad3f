#pragma once

#include <stdexcept>
#include <string>

namespace genusforge {

// Every error carries a stable identifier that the CLI prints on stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string id, const std::string& what)
      : std::runtime_error(what), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what = "division by zero")
      : Error("DivisionByZero", what) {}
};

class DegeneratePolygon : public Error {
 public:
  explicit DegeneratePolygon(const std::string& what) : Error("DegeneratePolygon", what) {}
};

class InfeasibleGenus : public Error {
 public:
  explicit InfeasibleGenus(const std::string& what) : Error("InfeasibleGenus", what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error("BudgetExceeded", what) {}
};

class InconsistentCounts : public Error {
 public:
  explicit InconsistentCounts(const std::string& what) : Error("InconsistentCounts", what) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what) : Error("FormatError", what) {}
};

}  // namespace genusforge
