#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace expderham {

/// Broad failure classes. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  internal = 1,
  input = 2,
  undecided = 3,
  precondition = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};

/// Laurent/Taylor expansion would need more terms than the configured cap.
class ExpansionOrderError : public Error {
 public:
  ExpansionOrderError(int requested, int cap)
      : Error(ErrorKind::precondition, "expansion order " + std::to_string(requested) +
                                           " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  int requested() const noexcept { return requested_; }
  int cap() const noexcept { return cap_; }

 private:
  int requested_;
  int cap_;
};

class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double residual)
      : Error(ErrorKind::precondition, what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class TruncationError : public Error {
 public:
  TruncationError(int requested, int minimal)
      : Error(ErrorKind::input, "truncation order " + std::to_string(requested) +
                                    " below minimal admissible " + std::to_string(minimal)),
        minimal_(minimal) {}
  int minimal() const noexcept { return minimal_; }

 private:
  int minimal_;
};

class PoleOnPathError : public Error {
 public:
  PoleOnPathError(std::complex<double> pole, double distance)
      : Error(ErrorKind::precondition, "coefficient pole at (" + std::to_string(pole.real()) + ", " +
                                           std::to_string(pole.imag()) + ") within " +
                                           std::to_string(distance) + " of the path"),
        pole_(pole) {}
  std::complex<double> pole() const noexcept { return pole_; }

 private:
  std::complex<double> pole_;
};

class DivergentEndError : public Error {
 public:
  explicit DivergentEndError(const std::string& what) : Error(ErrorKind::precondition, "divergent end: " + what) {}
};

class StokesEdgeError : public Error {
 public:
  explicit StokesEdgeError(const std::string& what) : Error(ErrorKind::precondition, "Stokes edge: " + what) {}
};

class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(std::complex<double> best, double error_estimate)
      : Error(ErrorKind::precondition, "quadrature budget exhausted (best error estimate " +
                                           std::to_string(error_estimate) + ")"),
        best_(best),
        error_(error_estimate) {}
  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> best_;
  double error_;
};

class NotSecondKindError : public Error {
 public:
  NotSecondKindError(std::complex<double> pole, std::complex<double> residue)
      : Error(ErrorKind::precondition, "not second kind: residue (" + std::to_string(residue.real()) + ", " +
                                           std::to_string(residue.imag()) + ") at pole (" +
                                           std::to_string(pole.real()) + ", " + std::to_string(pole.imag()) + ")"),
        pole_(pole) {}
  std::complex<double> pole() const noexcept { return pole_; }

 private:
  std::complex<double> pole_;
};

}  // namespace expderham
