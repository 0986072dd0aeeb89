#pragma once

#include <stdexcept>
#include <string>

namespace mprad {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyRoiError : Error {
    explicit EmptyRoiError(const std::string& what = "ROI contains no pixels") : Error(what) {}
};

struct OutOfBoundsError : Error {
    explicit OutOfBoundsError(const std::string& what = "polygon lies outside the image extent") : Error(what) {}
};

struct MultipleComponentsError : Error {
    explicit MultipleComponentsError(const std::string& what = "mask has more than one 8-connected component") : Error(what) {}
};

struct DegenerateRangeError : Error {
    explicit DegenerateRangeError(const std::string& what = "intensity range is degenerate (lo >= hi)") : Error(what) {}
};

struct ImageTooSmallError : Error {
    explicit ImageTooSmallError(const std::string& what = "image too small for this operation") : Error(what) {}
};

struct RoiTooSmallError : Error {
    explicit RoiTooSmallError(const std::string& what = "ROI bounding box too small") : Error(what) {}
};

struct NoPairsError : Error {
    explicit NoPairsError(const std::string& what = "no in-mask pixel pair for this offset") : Error(what) {}
};

struct DegenerateShapeError : Error {
    explicit DegenerateShapeError(const std::string& what = "degenerate shape") : Error(what) {}
};

struct MissingSequenceError : Error {
    explicit MissingSequenceError(const std::string& what = "patient is missing a sequence") : Error(what) {}
};

struct TooFewRowsError : Error {
    explicit TooFewRowsError(const std::string& what = "matrix needs at least 2 rows") : Error(what) {}
};

struct ZeroSignalError : Error {
    explicit ZeroSignalError(const std::string& what = "response carries no signal (lambda_max = 0)") : Error(what) {}
};

struct SingleClassError : Error {
    explicit SingleClassError(const std::string& what = "both classes must be present") : Error(what) {}
};

struct ClassTooSmallError : Error {
    explicit ClassTooSmallError(const std::string& what = "a class has fewer members than folds") : Error(what) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& what = "dimension mismatch") : Error(what) {}
};

struct MalformedCsvError : Error {
    explicit MalformedCsvError(const std::string& what = "malformed CSV") : Error(what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what = "I/O failure") : Error(what) {}
};

} // namespace mprad
