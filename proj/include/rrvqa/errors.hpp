#pragma once

#include <stdexcept>
#include <string>

namespace rrvqa {

// Base class for all toolkit errors. Subcategories exist so callers can
// distinguish malformed inputs from misuse of the API.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content (bad Y4M token, bad CSV column, bad model JSON).
class ParseError : public Error {
public:
    using Error::Error;
};

// Recognized but unsupported format variant (e.g. 4:2:2 chroma).
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem failures and short reads.
class IoError : public Error {
public:
    using Error::Error;
};

// Reference/test geometry or frame-count mismatch where alignment is required.
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Invalid numeric content: non-finite features, out-of-range values, inputs
// too small for the requested operation.
class DataError : public Error {
public:
    using Error::Error;
};

// Invalid run configuration (bad fold count, bad hyperparameters, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace rrvqa
