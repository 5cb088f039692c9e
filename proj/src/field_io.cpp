#include "parab/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace parab {

namespace {

void put_le64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    os.write(b, 8);
}

bool get_le64(std::istream& is, double& v) {
    char b[8];
    is.read(b, 8);
    if (is.gcount() != 8) return false;
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i)
        u |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    std::memcpy(&v, &u, 8);
    return true;
}

}  // namespace

void field_io_write(const ScalarField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw pgrid_error(pgrid_error::Kind::io, "cannot open for write: " + path);
    const GridSpec& s = f.spec();
    std::ostringstream hdr;
    hdr.precision(17);
    hdr << "PGRID1 " << s.nm1 << ' ' << s.h;
    for (int k = 0; k < s.nm1; ++k) hdr << ' ' << s.origin.x[static_cast<std::size_t>(k)];
    hdr << ' ' << s.origin.t;
    for (int k = 0; k < s.nm1; ++k) hdr << ' ' << s.nx[static_cast<std::size_t>(k)];
    hdr << ' ' << s.nt << ' ' << (f.periodic() ? 1 : 0) << '\n';
    os << hdr.str();
    for (double v : f.values()) put_le64(os, v);
    if (!os) throw pgrid_error(pgrid_error::Kind::io, "write failed: " + path);
}

ScalarField field_io_read(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw pgrid_error(pgrid_error::Kind::io, "cannot open for read: " + path);
    std::string line;
    if (!std::getline(is, line))
        throw pgrid_error(pgrid_error::Kind::bad_header, "missing header line");
    std::istringstream hs(line);
    std::string magic;
    int nm1 = 0, periodic = 0;
    double h = 0.0;
    hs >> magic >> nm1;
    if (!hs || magic != "PGRID1")
        throw pgrid_error(pgrid_error::Kind::bad_header, "bad magic: " + magic);
    if (nm1 != 1 && nm1 != 2)
        throw pgrid_error(pgrid_error::Kind::bad_dims, "unsupported n_minus_1");
    hs >> h;
    if (!hs || !(h > 0.0))
        throw pgrid_error(pgrid_error::Kind::bad_header, "step h must be positive");
    ParabolicPoint origin;
    origin.dim = nm1;
    for (int k = 0; k < nm1; ++k) hs >> origin.x[static_cast<std::size_t>(k)];
    hs >> origin.t;
    std::array<std::size_t, 2> nx{0, 0};
    long long tmp = 0;
    for (int k = 0; k < nm1; ++k) {
        hs >> tmp;
        if (!hs || tmp < 4) throw pgrid_error(pgrid_error::Kind::bad_dims, "bad axis count");
        nx[static_cast<std::size_t>(k)] = static_cast<std::size_t>(tmp);
    }
    hs >> tmp;
    if (!hs || tmp < 4) throw pgrid_error(pgrid_error::Kind::bad_dims, "bad time count");
    std::size_t nt = static_cast<std::size_t>(tmp);
    hs >> periodic;
    if (!hs) throw pgrid_error(pgrid_error::Kind::bad_header, "missing periodic flag");

    GridSpec spec(nm1, h, origin, nx, nt);
    std::vector<double> vals(spec.total());
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (!get_le64(is, vals[i]))
            throw pgrid_error(pgrid_error::Kind::truncated,
                              "payload truncated at value " + std::to_string(i));
    return ScalarField(spec, std::move(vals), periodic != 0);
}

}  // namespace parab
