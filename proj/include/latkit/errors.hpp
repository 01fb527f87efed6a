#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "latkit/bits.hpp"

namespace latkit {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class NotALattice : public Error {
  public:
    NotALattice(std::string msg, std::optional<std::pair<Id, Id>> witness)
        : Error(std::move(msg)), witness_(witness) {}
    const std::optional<std::pair<Id, Id>>& witness() const { return witness_; }

  private:
    std::optional<std::pair<Id, Id>> witness_;
};

class CyclicCovers : public Error {
  public:
    using Error::Error;
};

class InvalidOrder : public Error {
  public:
    using Error::Error;
};

class SizeLimitExceeded : public Error {
  public:
    SizeLimitExceeded(const std::string& what, std::size_t limit)
        : Error(what + " exceeds size limit " + std::to_string(limit)), limit_(limit) {}
    std::size_t limit() const { return limit_; }

  private:
    std::size_t limit_;
};

class UnknownFamily : public Error {
  public:
    explicit UnknownFamily(const std::string& name) : Error("unknown lattice family: " + name) {}
};

class MixedPreconditionViolated : public Error {
  public:
    using Error::Error;
};

class NotACongruence : public Error {
  public:
    using Error::Error;
};

class NotAnEmbedding : public Error {
  public:
    using Error::Error;
};

class NotSimple : public Error {
  public:
    using Error::Error;
};

class NotDistributive : public Error {
  public:
    using Error::Error;
};

class EmptyResult : public Error {
  public:
    using Error::Error;
};

class MalformedTerm : public Error {
  public:
    using Error::Error;
};

class FormatError : public Error {
  public:
    using Error::Error;
};

}  // namespace latkit
