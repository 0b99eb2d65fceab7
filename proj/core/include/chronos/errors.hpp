#pragma once

#include <stdexcept>
#include <string>

namespace chronos {

// Base class for every domain error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Date text does not have the YYYY-MM-DD shape.
class MalformedDate : public Error {
public:
    using Error::Error;
};

// Date text is well-shaped but names a nonexistent calendar day.
class InvalidDate : public Error {
public:
    using Error::Error;
};

class EmptyDocument : public Error {
public:
    using Error::Error;
};

class EmptyQuery : public Error {
public:
    using Error::Error;
};

// Search backend failed (transport, auth, or exhausted retries).
class ProviderError : public Error {
public:
    using Error::Error;
};

// Search backend asked us to back off; retried internally before surfacing.
class RateLimited : public Error {
public:
    using Error::Error;
};

class BackendError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

// The model's output did not contain the expected structure.
class UnparseableOutput : public Error {
public:
    using Error::Error;
};

class MissingBinding : public Error {
public:
    using Error::Error;
};

class InsufficientQuestions : public Error {
public:
    using Error::Error;
};

class CorruptPoolFile : public Error {
public:
    using Error::Error;
};

class MissingReference : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace chronos
