#pragma once

#include <stdexcept>
#include <string>

namespace olac {

/// Base of every exception the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a structural rule of the record model.
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string rule, const std::string& message)
        : Error(rule + ": " + message), rule_(std::move(rule)) {}

    const std::string& rule() const noexcept { return rule_; }

private:
    std::string rule_;
};

class UnknownVocabulary : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class MalformedTag : public Error {
public:
    using Error::Error;
};

class DuplicateId : public Error {
public:
    using Error::Error;
};

/// A line-oriented data file could not be read.
class ParseError : public Error {
public:
    using Error::Error;
};

/// The XML input cannot yield a record at all.
class FatalParse : public Error {
public:
    FatalParse(const std::string& message, long line = 0, long column = 0)
        : Error(line > 0 ? message + " (line " + std::to_string(line) + ", column " +
                               std::to_string(column) + ")"
                         : message),
          line_(line), column_(column) {}

    long line() const noexcept { return line_; }
    long column() const noexcept { return column_; }

private:
    long line_;
    long column_;
};

class ProviderUnreachable : public Error {
public:
    using Error::Error;
};

class ProtocolError : public Error {
public:
    using Error::Error;
};

class DuplicateArchiveId : public Error {
public:
    using Error::Error;
};

class UnknownArchive : public Error {
public:
    using Error::Error;
};

class NoPriorHarvest : public Error {
public:
    using Error::Error;
};

class EmptyQuery : public Error {
public:
    EmptyQuery() : Error("query has no criteria") {}
};

class UnknownFacet : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace olac
