#ifndef IDPF_ERRORS_H_
#define IDPF_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idpf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or incompatible construction parameters (non-prime modulus,
// mismatched extension degrees, gcd(m, p) != 1, ...).
class ParamError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

// Caller-supplied value outside its domain (x not in [N], w not in H_m, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// The parameter set cannot support the requested object. An inconsistent
// multiplicity-2 lift also lands here.
class ImpossibleParams : public Error {
 public:
  using Error::Error;
};

class LiftFailure : public ImpossibleParams {
 public:
  using ImpossibleParams::ImpossibleParams;
};

// An artifact on disk does not match the context it is loaded into.
class ArtifactMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace idpf

#endif  // IDPF_ERRORS_H_
