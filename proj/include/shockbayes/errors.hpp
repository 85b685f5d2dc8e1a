#pragma once

#include <stdexcept>
#include <string>

namespace shockbayes {

// Error taxonomy. The CLI maps categories to process exit codes:
// config -> 2, data -> 3, numerical -> 4.
enum class ErrorCategory { config, data, numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, std::string kind, const std::string& what)
        : std::runtime_error(what), category_(cat), kind_(std::move(kind)) {}
    ErrorCategory category() const noexcept { return category_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what)
        : Error(ErrorCategory::config, "ConfigError", what) {}
};

struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(ErrorCategory::data, "ParseError",
                "line " + std::to_string(line) + ", column " + std::to_string(column) +
                    ": " + what),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what)
        : Error(ErrorCategory::data, "ValidationError", what) {}
};

#define SHOCKBAYES_NUMERICAL_ERROR(Name)                       \
    struct Name : Error {                                      \
        explicit Name(const std::string& what)                 \
            : Error(ErrorCategory::numerical, #Name, what) {}  \
    }

SHOCKBAYES_NUMERICAL_ERROR(DomainError);
SHOCKBAYES_NUMERICAL_ERROR(EmptyInput);
SHOCKBAYES_NUMERICAL_ERROR(NotPositiveDefinite);
SHOCKBAYES_NUMERICAL_ERROR(RankDeficient);
SHOCKBAYES_NUMERICAL_ERROR(TooFewPoints);
SHOCKBAYES_NUMERICAL_ERROR(DegenerateDesign);
SHOCKBAYES_NUMERICAL_ERROR(DegenerateResiduals);
SHOCKBAYES_NUMERICAL_ERROR(SingularPrecision);
SHOCKBAYES_NUMERICAL_ERROR(UndefinedCovariance);
SHOCKBAYES_NUMERICAL_ERROR(UndefinedMoment);
SHOCKBAYES_NUMERICAL_ERROR(UnsupportedDegree);
SHOCKBAYES_NUMERICAL_ERROR(UnphysicalRegion);
SHOCKBAYES_NUMERICAL_ERROR(ExcessiveRejection);
SHOCKBAYES_NUMERICAL_ERROR(ExcessiveRedraws);
SHOCKBAYES_NUMERICAL_ERROR(TieBreak);
SHOCKBAYES_NUMERICAL_ERROR(EmptyIntersection);
SHOCKBAYES_NUMERICAL_ERROR(GridTooCoarse);

#undef SHOCKBAYES_NUMERICAL_ERROR

}  // namespace shockbayes
