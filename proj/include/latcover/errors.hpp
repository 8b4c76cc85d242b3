#pragma once

#include <stdexcept>
#include <string>

namespace latcover {

// Base class for all exactness/precondition failures raised by the library.
// `code` is a stable machine-readable tag, mirrored into CLI diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define LATCOVER_DEFINE_ERROR(Name)                                        \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}       \
    }

LATCOVER_DEFINE_ERROR(NotSublattice);
LATCOVER_DEFINE_ERROR(ZeroVector);
LATCOVER_DEFINE_ERROR(PointNotInLattice);
LATCOVER_DEFINE_ERROR(PointOutsidePolytope);
LATCOVER_DEFINE_ERROR(NotAVertex);
LATCOVER_DEFINE_ERROR(NotPointed);
LATCOVER_DEFINE_ERROR(NotVeryAmple);
LATCOVER_DEFINE_ERROR(DimensionNot3);
LATCOVER_DEFINE_ERROR(NotUnimodularPyramid);
LATCOVER_DEFINE_ERROR(EmptyEllipsoid);
LATCOVER_DEFINE_ERROR(NotExtremal);
LATCOVER_DEFINE_ERROR(BOutOfRange);
LATCOVER_DEFINE_ERROR(DimensionTooSmall);
LATCOVER_DEFINE_ERROR(PointNotOnBoundary);
LATCOVER_DEFINE_ERROR(ChainStepNotNormal);
LATCOVER_DEFINE_ERROR(VerificationFailed);
LATCOVER_DEFINE_ERROR(CenterNotHalfIntegral);
LATCOVER_DEFINE_ERROR(TooManyCells);
LATCOVER_DEFINE_ERROR(PreconditionUnmet);
LATCOVER_DEFINE_ERROR(InputError);

#undef LATCOVER_DEFINE_ERROR

}  // namespace latcover
