#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kg2p {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input text contains a character that is not a precomposed Hangul syllable.
class NonHangulCharacter : public Error {
public:
  explicit NonHangulCharacter(std::size_t position)
      : Error("non-Hangul character at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// A syllable triple cannot be composed into a precomposed code point.
class InvalidTriple : public Error {
public:
  using Error::Error;
};

/// A romanized string contains something outside the romanization table.
class UnknownToken : public Error {
public:
  UnknownToken(std::size_t position, const std::string& what)
      : Error("unknown romanization token at position " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class MalformedNumber : public Error {
public:
  explicit MalformedNumber(const std::string& token) : Error("malformed number: '" + token + "'") {}
};

class Unclassifiable : public Error {
public:
  explicit Unclassifiable(const std::string& token) : Error("unclassifiable token: '" + token + "'") {}
};

class UnknownTag : public Error {
public:
  explicit UnknownTag(const std::string& tag) : Error("unknown POS tag: '" + tag + "'"), tag_(tag) {}
  const std::string& tag() const { return tag_; }

private:
  std::string tag_;
};

class UnknownLabel : public Error {
public:
  explicit UnknownLabel(const std::string& label) : Error("unknown connectivity label: '" + label + "'") {}
};

/// Malformed resource file. Carries the file name and 1-based line number.
class ResourceError : public Error {
public:
  ResourceError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}
  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

private:
  std::string file_;
  std::size_t line_;
};

}  // namespace kg2p
