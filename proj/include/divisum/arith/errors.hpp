#pragma once

#include <stdexcept>
#include <string>

namespace divisum {

// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

// Evaluation at a pole (zeta at 1, gamma at a nonpositive integer).
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

// Evaluation at a point where a function is singular by construction.
class singular_argument_error : public domain_error {
 public:
  using domain_error::domain_error;
};

// The requested accuracy cannot be certified at the working precision.
class precision_error : public error {
 public:
  using error::error;
};

// An iterative or numerical method failed to converge.
class convergence_error : public error {
 public:
  using error::error;
};

// The parameters fall outside the regime any implemented method covers.
class unsupported_error : public error {
 public:
  using error::error;
};

// A verification step found an inconsistency.
class verification_error : public error {
 public:
  using error::error;
};

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw domain_error(msg);
}
}  // namespace detail

}  // namespace divisum
