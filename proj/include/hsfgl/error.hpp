#ifndef HSFGL_ERROR_HPP
#define HSFGL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hsfgl {

// Every failure raised by the library derives from Error so callers can
// catch the whole family at once.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define HSFGL_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                               \
    public:                                                                   \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}  \
    }

HSFGL_DEFINE_ERROR(DivisionByZero);
HSFGL_DEFINE_ERROR(NotPrime);
HSFGL_DEFINE_ERROR(FieldMismatch);
HSFGL_DEFINE_ERROR(IntegralityViolation);
HSFGL_DEFINE_ERROR(PositiveValuationRequired);
HSFGL_DEFINE_ERROR(NotReversible);
HSFGL_DEFINE_ERROR(NotAUnit);
HSFGL_DEFINE_ERROR(InvalidLaw);
HSFGL_DEFINE_ERROR(InsufficientPrecision);
HSFGL_DEFINE_ERROR(MalformedPSeries);
HSFGL_DEFINE_ERROR(OrderOutOfRange);
HSFGL_DEFINE_ERROR(WindowOverflow);
HSFGL_DEFINE_ERROR(NotProportional);
HSFGL_DEFINE_ERROR(NotNilpotent);
HSFGL_DEFINE_ERROR(NotMultiplicativelyRestricted);
HSFGL_DEFINE_ERROR(ParseError);

#undef HSFGL_DEFINE_ERROR

} // namespace hsfgl

#endif
