#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bns {

enum class ErrorKind {
  Parse,
  UnknownGenerator,
  MalformedExponent,
  InvalidPresentation,
  RelatorNonVanishing,
  ZeroCharacter,
  NotInRing,
  InvalidArgument,
  AlphabetCollision,
  SymbolCollision,
  NoOracle,
  UnderdeterminedClassification,
  DeclarationMismatch,
  NonInvertiblePhi,
  EvaluatorUndefined,
  BallTooLarge,
  UnknownFormat,
  MalformedCertificate,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` lets callers branch
// (the CLI maps kinds onto exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Input rejection carrying a 1-based line/column (column 0 when unknown).
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t line,
             std::size_t column)
      : Error(kind, format(message, line, column)),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            std::size_t column) {
    std::string out = message;
    if (line != 0) {
      out += " (line " + std::to_string(line);
      if (column != 0) out += ", column " + std::to_string(column);
      out += ")";
    } else if (column != 0) {
      out += " (column " + std::to_string(column) + ")";
    }
    return out;
  }

  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace bns
