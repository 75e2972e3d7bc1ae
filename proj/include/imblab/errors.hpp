#pragma once

#include <stdexcept>
#include <string>

namespace imblab {

// Root of the library's error taxonomy. The CLI catches Error at its
// boundary and maps subtypes onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// dataset ingestion and synthesis
struct FormatError : Error { using Error::Error; };
struct DataError : Error { using Error::Error; };
struct SpecError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct StratificationError : Error { using Error::Error; };

// separability
struct DegenerateClassError : Error { using Error::Error; };

// net
struct ShapeError : Error { using Error::Error; };
struct NumericsError : Error { using Error::Error; };

// losses
struct LabelError : Error { using Error::Error; };
struct GroupError : Error { using Error::Error; };

// sampling
struct SamplerError : Error { using Error::Error; };
struct SmoteError : Error { using Error::Error; };

// metrics
struct MetricError : Error { using Error::Error; };

// training
struct ValidationCoverageError : Error { using Error::Error; };

}  // namespace imblab
