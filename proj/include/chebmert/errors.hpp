#ifndef CHEBMERT_ERRORS_HPP
#define CHEBMERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chebmert {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid model specification, bad flags, malformed config/cache.
class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Sieve bound or memory budget exceeded.
class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

// Operation applied at a prime dividing the discriminant.
class RamifiedPrimeError : public Error {
public:
  explicit RamifiedPrimeError(const std::string& what) : Error(what) {}
};

// Local factor requested at a prime outside the exceptional-free set.
class OutOfSetError : public Error {
public:
  explicit OutOfSetError(const std::string& what) : Error(what) {}
};

}  // namespace chebmert

#endif
