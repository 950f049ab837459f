#pragma once

#include <stdexcept>
#include <string>

namespace artcode {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// image / decoding
class NoForeground : public Error { public: using Error::Error; };
class NoValidRoot : public Error { public: using Error::Error; };
class InvalidSpec : public Error { public: using Error::Error; };
class ImageTooSmall : public Error { public: using Error::Error; };

// classifiers / data
class DimensionMismatch : public Error { public: using Error::Error; };
class DegenerateTrainingSet : public Error { public: using Error::Error; };

// persistence
class IoError : public Error { public: using Error::Error; };
class VersionMismatch : public Error { public: using Error::Error; };
class CorruptModel : public Error { public: using Error::Error; };

// MR augmentation
class UnsupportedMaskCount : public Error { public: using Error::Error; };

// statistics / evaluation
class GroupTooSmall : public Error { public: using Error::Error; };
class FoldTooSmall : public Error { public: using Error::Error; };

/// Invariant violations on user-supplied values (thresholds, weights, configs).
class InvalidArgument : public Error { public: using Error::Error; };

} // namespace artcode
