#pragma once

#include <stdexcept>
#include <string>

namespace assort {

// Base of every error raised by the library. Callers that only care about
// "something about the inputs was wrong" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
public:
    using Error::Error;
};

class InvalidAssortment : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DivergenceUndefined : public Error {
public:
    using Error::Error;
};

// next/observe called out of order, or an outcome that does not belong to
// the last offered assortment.
class ProtocolError : public Error {
public:
    using Error::Error;
};

// Raised by next_assortment() once all T periods have been consumed.
class HorizonExhausted : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

} // namespace assort
