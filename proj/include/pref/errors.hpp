#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pref {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration problems: unbound roles, bad config files, missing credentials.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A live provider failed after all retries were exhausted.
class ProviderError : public Error {
public:
    ProviderError(int status, std::string body)
        : Error("provider error, status " + std::to_string(status) + ": " + body),
          status(status),
          body(std::move(body)) {}

    int status;
    std::string body;
};

// Mock backend has no fixture for the requested tag.
class MockMiss : public Error {
public:
    explicit MockMiss(const std::string& tag)
        : Error("mock fixture miss for tag: " + tag), tag(tag) {}

    std::string tag;
};

// Fixture key registered twice.
class DuplicateKey : public Error {
public:
    explicit DuplicateKey(const std::string& key)
        : Error("duplicate mock fixture key: " + key), key(key) {}

    std::string key;
};

// Template referenced a slot the caller did not fill.
class TemplateError : public Error {
public:
    using Error::Error;
};

namespace detail {
inline std::string join_issues(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) out += "; ";
        out += issue;
    }
    return out;
}
}  // namespace detail

// Structured output could not be parsed, even after the single repair round.
class ParseFailure : public Error {
public:
    ParseFailure(std::string phase, std::vector<std::string> issues,
                 std::vector<std::string> raw_completions = {})
        : Error(phase + " parse failure: " + detail::join_issues(issues)),
          phase(std::move(phase)),
          issues(std::move(issues)),
          raw_completions(std::move(raw_completions)) {}

    std::string phase;
    std::vector<std::string> issues;
    std::vector<std::string> raw_completions;
};

// Preference output dropped, duplicated, or invented factor ids.
class PermutationViolation : public ParseFailure {
public:
    PermutationViolation(std::vector<std::string> issues,
                         std::vector<std::string> raw_completions = {})
        : ParseFailure("personalization", std::move(issues), std::move(raw_completions)) {}
};

// Judge score outside [0, 10] after the repair attempt.
class RangeViolation : public ParseFailure {
public:
    RangeViolation(std::vector<std::string> issues,
                   std::vector<std::string> raw_completions = {})
        : ParseFailure("scoring", std::move(issues), std::move(raw_completions)) {}
};

// Dataset file could not be parsed at a given line.
class DatasetParseError : public Error {
public:
    DatasetParseError(std::size_t line_no, const std::string& detail)
        : Error("line " + std::to_string(line_no) + ": " + detail), line_no(line_no) {}

    std::size_t line_no;
};

// One or more instances violated their invariants; ids are carried for reporting.
class DatasetValidationError : public Error {
public:
    DatasetValidationError(std::vector<std::string> instance_ids, std::vector<std::string> violations)
        : Error("dataset validation failed: " + detail::join_issues(violations)),
          instance_ids(std::move(instance_ids)),
          violations(std::move(violations)) {}

    std::vector<std::string> instance_ids;
    std::vector<std::string> violations;
};

// Metric preconditions.
class MetricError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public MetricError {
public:
    explicit EmptyInput(const std::string& what = "empty input") : MetricError(what) {}
};

class IdMismatch : public MetricError {
public:
    explicit IdMismatch(const std::string& what = "rank vectors do not contain the same id set")
        : MetricError(what) {}
};

class TooShort : public MetricError {
public:
    explicit TooShort(const std::string& what = "rank vectors need at least 2 elements")
        : MetricError(what) {}
};

class LengthMismatch : public MetricError {
public:
    explicit LengthMismatch(const std::string& what = "input vectors differ in length")
        : MetricError(what) {}
};

class ZeroVariance : public MetricError {
public:
    explicit ZeroVariance(const std::string& what = "input vector has zero variance")
        : MetricError(what) {}
};

class BadFraction : public Error {
public:
    explicit BadFraction(double fraction)
        : Error("test_fraction must be in (0, 1), got " + std::to_string(fraction)) {}
};

}  // namespace pref
