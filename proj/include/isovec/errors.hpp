#ifndef ISOVEC_ERRORS_HPP
#define ISOVEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isovec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
    public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (zero input, even modulus,
/// dimension mismatch, malformed document, ...).
class InvalidArgument : public Error
{
    public:
    using Error::Error;
};

/// A configured resource bound was hit: factorization digit bound,
/// class-group discriminant bound, continued-fraction period cap, or the
/// prime-append cap of the solver loops.
class ResourceLimit : public Error
{
    public:
    using Error::Error;
};

/// An internal consistency check failed. Seeing one of these means a bug.
class InternalError : public Error
{
    public:
    using Error::Error;
};

/// The input form has no isotropic vector over Q. `place()` names one
/// place where the form is locally anisotropic ("inf", "2", "3", ...), or
/// "unary" for forms of dimension 1.
class Anisotropic : public Error
{
    std::string where;

    public:
    Anisotropic(std::string place, std::string const & what)
        : Error(what), where(std::move(place))
    {
    }

    std::string const & place() const { return where; }
};

} // namespace isovec

#endif
