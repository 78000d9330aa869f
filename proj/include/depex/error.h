#ifndef DEPEX_ERROR_H_
#define DEPEX_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace depex {

// Base for every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(size_t line, const std::string &message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// A value violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Network-level failure talking to the parse server.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Parse server answered with a non-2xx status.
class ServerError : public Error {
 public:
  ServerError(int status, const std::string &message)
      : Error("server returned status " + std::to_string(status) + ": " +
              message),
        status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

// Parse server answered 2xx but the payload is not what we expect.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace depex

#endif  // DEPEX_ERROR_H_
