#pragma once

#include <stdexcept>
#include <string>

namespace grainsight {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// No dark quadrilateral passed the canvas acceptance tests.
class NoCanvasFound : public Error {
public:
    using Error::Error;
};

/// The 5% crop of the canvas box leaves too small a region to segment.
class DegenerateRoi : public Error {
public:
    using Error::Error;
};

/// Too few enclosed pixels (or a zero-width region) for a moment fit.
class DegenerateContour : public Error {
public:
    using Error::Error;
};

/// The scene generator could not place all grains without touching.
class PlacementOverflow : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace grainsight
