#pragma once

#include <stdexcept>
#include <string>

namespace hypertraffic {

/// Base of every error raised by the library. `kind()` is the stable name
/// the CLI prints on standard error.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HYPERTRAFFIC_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    }

HYPERTRAFFIC_DEFINE_ERROR(DisconnectedGraph);
HYPERTRAFFIC_DEFINE_ERROR(MalformedEdge);
HYPERTRAFFIC_DEFINE_ERROR(IndexOutOfRange);
HYPERTRAFFIC_DEFINE_ERROR(GraphTooLarge);
HYPERTRAFFIC_DEFINE_ERROR(SizeOverflow);
HYPERTRAFFIC_DEFINE_ERROR(NotHyperbolic);
HYPERTRAFFIC_DEFINE_ERROR(EvenSide);
HYPERTRAFFIC_DEFINE_ERROR(InvalidArgument);
HYPERTRAFFIC_DEFINE_ERROR(ParseError);
HYPERTRAFFIC_DEFINE_ERROR(InvalidRate);
HYPERTRAFFIC_DEFINE_ERROR(SigmaOverflow);
HYPERTRAFFIC_DEFINE_ERROR(EmptyBoundary);
HYPERTRAFFIC_DEFINE_ERROR(WindowTooLarge);
HYPERTRAFFIC_DEFINE_ERROR(EmptySphere);
HYPERTRAFFIC_DEFINE_ERROR(TooFewDepths);
HYPERTRAFFIC_DEFINE_ERROR(InvariantViolation);

#undef HYPERTRAFFIC_DEFINE_ERROR

}  // namespace hypertraffic
