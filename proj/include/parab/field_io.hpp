#pragma once

#include <stdexcept>
#include <string>

#include "parab/grid.hpp"

namespace parab {

/// Errors raised by the PGRID reader/writer, one kind per failure mode.
class pgrid_error : public std::runtime_error {
public:
    enum class Kind { bad_header, bad_dims, truncated, io };
    pgrid_error(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// PGRID field file: one ASCII header line
///   PGRID1 n_minus_1 h origin... counts... periodic
/// followed by little-endian IEEE float64 in row-major order, x fastest and
/// t slowest. The header prints h and origin with 17 significant digits so a
/// round trip is bit-exact.
void field_io_write(const ScalarField& f, const std::string& path);
ScalarField field_io_read(const std::string& path);

}  // namespace parab
