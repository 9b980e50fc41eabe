#pragma once

#include <stdexcept>
#include <string>

namespace etx {

/// Base for rejected inputs: bad dimensions, unphysical parameters,
/// unsupported parameter regimes. The CLI maps these to exit code 1.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct NonHermitianInput : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct UnphysicalChannel : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct InvalidParameters : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct DegenerateBlock : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct NotCompletelyPositive : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct UnsupportedRegime : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct UnsupportedCorrelation : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct ZeroCooperativity : InvalidInput {
    using InvalidInput::InvalidInput;
};
struct NonPhysicalInput : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Base for failures of the numerics themselves (non-convergence,
/// kernel extraction, step-size collapse). CLI exit code 2.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceFailure : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct OverflowRisk : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct EmptyKernel : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct DegenerateSteadyState : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct StepSizeUnderflow : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};
struct PositivityLoss : NumericalFailure {
    using NumericalFailure::NumericalFailure;
};

}  // namespace etx
