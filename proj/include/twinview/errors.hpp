#ifndef TWINVIEW_ERRORS_HPP
#define TWINVIEW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twinview {

// Error categories map onto CLI exit codes: usage -> 1, data -> 2,
// numeric -> 3.
enum class ErrorCategory { usage, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), category_(cat) {}
    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& msg)
        : Error(ErrorCategory::data, msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg)
        : Error(ErrorCategory::usage, msg) {}
};

class ViewMismatchError : public Error {
public:
    explicit ViewMismatchError(const std::string& msg)
        : Error(ErrorCategory::data, msg) {}
};

class SingularSystemError : public Error {
public:
    explicit SingularSystemError(const std::string& msg)
        : Error(ErrorCategory::numeric, msg) {}
};

class DegenerateClassError : public Error {
public:
    explicit DegenerateClassError(const std::string& msg)
        : Error(ErrorCategory::numeric, msg) {}
};

class UnsupportedCheckError : public Error {
public:
    explicit UnsupportedCheckError(const std::string& msg)
        : Error(ErrorCategory::usage, msg) {}
};

class IngestError : public Error {
public:
    explicit IngestError(const std::string& msg)
        : Error(ErrorCategory::data, msg) {}
};

class TuningError : public Error {
public:
    explicit TuningError(const std::string& msg)
        : Error(ErrorCategory::numeric, msg) {}
};

class StatsError : public Error {
public:
    explicit StatsError(const std::string& msg)
        : Error(ErrorCategory::data, msg) {}
};

class ReportFormatError : public Error {
public:
    explicit ReportFormatError(const std::string& msg)
        : Error(ErrorCategory::data, msg) {}
};

}  // namespace twinview

#endif
