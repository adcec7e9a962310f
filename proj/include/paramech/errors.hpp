#pragma once

#include <stdexcept>
#include <string>

namespace paramech {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its contract (wrong kind, wrong mode, unknown symbol...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Division by a para-complex number of vanishing modulus (a point on a null line of A).
class ZeroDivisorError : public Error {
 public:
  using Error::Error;
};

class NumericRangeError : public Error {
 public:
  using Error::Error;
};

/// Expression syntax error. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message, std::string token)
      : Error("line " + std::to_string(line) + " col " + std::to_string(column) + ": " + message +
              (token.empty() ? std::string() : " near '" + token + "'")),
        line_(line),
        column_(column),
        message_(std::move(message)),
        token_(std::move(token)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::string token_;
};

/// Model document validation failure; `path` names the offending key (e.g. "time.dt").
class ModelError : public Error {
 public:
  ModelError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// The semispray equation has no unique solution: the Lagrangian is degenerate.
class SingularHessianError : public Error {
 public:
  SingularHessianError(const std::string& report, int rank, int expected)
      : Error("singular Hessian: " + report), rank_(rank), expected_(expected) {}

  int rank() const { return rank_; }
  int expected_rank() const { return expected_; }

 private:
  int rank_;
  int expected_;
};

/// Integration produced a non-finite state.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(double last_good_time)
      : Error("integration diverged after t = " + std::to_string(last_good_time)),
        last_good_time_(last_good_time) {}

  double last_good_time() const { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace paramech
