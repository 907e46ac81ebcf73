#pragma once

#include <stdexcept>
#include <string>

#include "ringdelay/format.hpp"

namespace ringdelay {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied parameters outside the documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A closed form was requested outside the regime it was derived for.
class InvalidRegime : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Coordinate outside the extent of a wavefunction region.
class OutOfRange : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The computation was well posed but could not be carried out numerically.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// |E - V| within the critical-incidence tolerance.
class DegenerateWavevector : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSystem : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroAmplitude : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Phase moved by more than pi/2 across the differentiation stencil.
class StepTooLarge : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A numerical failure inside a sweep, tagged with the sweep coordinate.
class SweepError : public NumericalError {
public:
    SweepError(const std::string& parameter_name, double parameter_value, const std::string& cause)
        : NumericalError(parameter_name + "=" + format_double(parameter_value) + ": " + cause),
          parameter_name_(parameter_name),
          parameter_value_(parameter_value) {}

    const std::string& parameter_name() const noexcept { return parameter_name_; }
    double parameter_value() const noexcept { return parameter_value_; }

private:
    std::string parameter_name_;
    double parameter_value_;
};

}  // namespace ringdelay
