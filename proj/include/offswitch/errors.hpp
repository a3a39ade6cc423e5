#ifndef OFFSWITCH_ERRORS_HPP
#define OFFSWITCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace offswitch {

// Base for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidTrajectory : Error {
    using Error::Error;
};

struct InvalidLottery : Error {
    using Error::Error;
};

struct InvalidProbability : Error {
    using Error::Error;
};

struct UnregisteredLottery : Error {
    using Error::Error;
};

struct ContextViolation : Error {
    using Error::Error;
};

struct EmptySubset : Error {
    using Error::Error;
};

struct NotInSupport : Error {
    using Error::Error;
};

struct MalformedWitness : Error {
    using Error::Error;
};

struct MissingContext : Error {
    using Error::Error;
};

struct InvalidScenario : Error {
    using Error::Error;
};

struct UnrankedChoice : Error {
    using Error::Error;
};

struct InconsistentStructure : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

struct AntecedentUnverifiable : Error {
    using Error::Error;
};

struct InvalidDiscount : Error {
    using Error::Error;
};

struct InvalidBounds : Error {
    using Error::Error;
};

struct CapExceeded : Error {
    using Error::Error;
};

// Input-file diagnostics carry enough position info for CLI exit-2 reports.
struct ParseError : Error {
    std::string file;
    int line;
    std::string field;

    ParseError(std::string file_, int line_, std::string field_, const std::string& message)
        : Error(format(file_, line_, field_, message)),
          file(std::move(file_)),
          line(line_),
          field(std::move(field_)) {}

    static std::string format(const std::string& file, int line, const std::string& field,
                              const std::string& message);
};

}  // namespace offswitch

#endif
