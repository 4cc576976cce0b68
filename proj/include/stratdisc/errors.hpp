#pragma once

#include <stdexcept>
#include <string>

namespace stratdisc
{
//! Input outside an operation's domain: bad parameters, malformed point files.
class DomainError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Reading or writing a file failed.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Internal consistency failure (e.g. a rejection sampler that never accepts).
class DiagnosticFailure : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace stratdisc
