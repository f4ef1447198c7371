#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed concrete syntax (types, terms, structures, proof files).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Malformed input files (JSON shape, unknown fields, bad indices).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A proof node that does not instantiate its inference rule.
// `path` lists premise indices from the root down to the offending node.
class TypeError : public Error {
 public:
  TypeError(std::string rule, std::string expected, std::string found,
            std::vector<int> path = {})
      : Error(format(rule, expected, found, path)),
        rule_(std::move(rule)),
        expected_(std::move(expected)),
        found_(std::move(found)),
        path_(std::move(path)) {}

  const std::string& rule() const { return rule_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }
  const std::vector<int>& path() const { return path_; }

 private:
  static std::string format(const std::string& rule, const std::string& expected,
                            const std::string& found, const std::vector<int>& path) {
    std::string where = "root";
    for (int i : path) where += "." + std::to_string(i);
    return "type error in " + rule + " at " + where + ": expected " + expected +
           ", found " + found;
  }

  std::string rule_;
  std::string expected_;
  std::string found_;
  std::vector<int> path_;
};

// A resource that is duplicated or dropped.
class LinearityError : public Error {
 public:
  LinearityError(const std::string& what, std::vector<int> path = {})
      : Error("linearity error: " + what), path_(std::move(path)) {}
  const std::vector<int>& path() const { return path_; }

 private:
  std::vector<int> path_;
};

class HeadlessStructure : public Error {
 public:
  using Error::Error;
};

class BijectionError : public Error {
 public:
  using Error::Error;
};

// Proof-net correctness failures raised by the traversal.
class NetError : public Error {
 public:
  using Error::Error;
};

class CycleError : public NetError {
 public:
  using NetError::NetError;
};

class DisconnectedError : public NetError {
 public:
  using NetError::NetError;
};

// Nets that need rules outside the supported fragment (diamond elimination,
// box introduction).
class UnsupportedNetError : public NetError {
 public:
  using NetError::NetError;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class MissingScores : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  CapExceeded(double space, double cap)
      : Error("search space of " + whole(space) + " matchings exceeds cap " + whole(cap)),
        space_(space) {}
  double space() const { return space_; }

 private:
  static std::string whole(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  double space_;
};

// Bounds recursion in the concrete-syntax parsers.
inline constexpr int kMaxNesting = 1000;

class NestingGuard {
 public:
  NestingGuard(int& depth, std::size_t offset) : depth_(depth) {
    if (++depth_ > kMaxNesting) {
      --depth_;
      throw SyntaxError("nesting deeper than " + std::to_string(kMaxNesting), offset);
    }
  }
  ~NestingGuard() { --depth_; }
  NestingGuard(const NestingGuard&) = delete;
  NestingGuard& operator=(const NestingGuard&) = delete;

 private:
  int& depth_;
};

}  // namespace tlg
