#pragma once

#include <stdexcept>
#include <string>

namespace kummer {

// Every failure carries a stable machine-readable kind alongside the message.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define KUMMER_ERROR(Name)                                                  \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    };

KUMMER_ERROR(InvalidD)
KUMMER_ERROR(NotAUnit)
KUMMER_ERROR(NonSimpleRoot)
KUMMER_ERROR(NotRealQuadratic)
KUMMER_ERROR(SearchBudgetExceeded)
KUMMER_ERROR(DiscriminantTooLarge)
KUMMER_ERROR(PrecisionInsufficient)
KUMMER_ERROR(RankDeficient)
KUMMER_ERROR(RankMismatch)
KUMMER_ERROR(PreconditionXCirc)
KUMMER_ERROR(NormalizationFailed)
KUMMER_ERROR(AmbientMismatch)
KUMMER_ERROR(DegenerateKummer)
KUMMER_ERROR(FixtureError)

#undef KUMMER_ERROR

// Not an error in the arithmetic: the computation ran out of certified data.
class Inconclusive : public Error {
public:
    explicit Inconclusive(const std::string& what) : Error("Inconclusive", what) {}
};

}  // namespace kummer
