#pragma once

#include <stdexcept>
#include <string>

namespace asw {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  DivisionByZeroError() : Error("division by zero") {}
};

// An operation that is well defined but not available for the given field
// (e.g. Frobenius inverse over F_q(t)).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class SpecializationPoleError : public Error {
 public:
  using Error::Error;
};

// A denominator that does not split into linear factors over the
// configured coefficient field.
class UnsplitPoleError : public Error {
 public:
  UnsplitPoleError(std::string factor, unsigned extension_degree)
      : Error("unsplit pole: factor " + factor +
              (extension_degree > 0
                   ? " (splits over an extension of degree " + std::to_string(extension_degree) + ")"
                   : std::string())),
        factor_(std::move(factor)),
        extension_degree_(extension_degree) {}

  const std::string& factor() const noexcept { return factor_; }
  // 0 when unknown (parametric fields).
  unsigned extension_degree() const noexcept { return extension_degree_; }

 private:
  std::string factor_;
  unsigned extension_degree_;
};

// A configured size limit (e.g. the Witt level cap) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// The reduced first Witt entry has no pole: the vector does not define a
// Z/p^n-cover.
class OrderDropError : public Error {
 public:
  OrderDropError() : Error("order drop: reduced first entry has no pole") {}
};

class InvalidDatumError : public Error {
 public:
  using Error::Error;
};

class InadmissibleError : public Error {
 public:
  using Error::Error;
};

// A family constructor produced a vector whose certificate does not verify.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace asw
