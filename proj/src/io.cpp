#include "wavese/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace wavese {

namespace {

static_assert(std::endian::native == std::endian::little,
              "WVS1 writer assumes a little-endian host");

void write_csv_impl(const ScalePositionGrid& grid, const std::vector<cplx>& values,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "a,b,re,im\n";
    char buf[128];
    for (std::size_t j = 0; j < grid.n_scales; ++j) {
        const double a = grid.scale(j);
        for (std::size_t i = 0; i < grid.n_positions(); ++i) {
            const cplx& v = values[j * grid.n_positions() + i];
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", a,
                          grid.positions.point(i), v.real(), v.imag());
            out << buf;
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

void write_wvs1_impl(const ScalePositionGrid& grid, const std::vector<cplx>& values,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write("WVS1", 4);
    const std::uint64_t ns = grid.n_scales, np = grid.n_positions();
    out.write(reinterpret_cast<const char*>(&ns), 8);
    out.write(reinterpret_cast<const char*>(&np), 8);
    for (std::size_t j = 0; j < grid.n_scales; ++j) {
        const double a = grid.scale(j);
        out.write(reinterpret_cast<const char*>(&a), 8);
    }
    for (std::size_t i = 0; i < grid.n_positions(); ++i) {
        const double b = grid.positions.point(i);
        out.write(reinterpret_cast<const char*>(&b), 8);
    }
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(cplx)));
    if (!out) throw IoError("write failed: " + path);
}

} // namespace

void write_field_csv(const WaveletField& field, const std::string& path) {
    write_csv_impl(field.grid, field.coefficients, path);
}

void write_field_csv(const PotentialField& field, const std::string& path) {
    write_csv_impl(field.grid, field.values, path);
}

void write_field_wvs1(const WaveletField& field, const std::string& path) {
    write_wvs1_impl(field.grid, field.coefficients, path);
}

void write_field_wvs1(const PotentialField& field, const std::string& path) {
    write_wvs1_impl(field.grid, field.values, path);
}

Wvs1Data read_wvs1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "WVS1", 4) != 0)
        throw IoError("not a WVS1 file: " + path);
    std::uint64_t ns = 0, np = 0;
    in.read(reinterpret_cast<char*>(&ns), 8);
    in.read(reinterpret_cast<char*>(&np), 8);
    if (!in) throw IoError("truncated WVS1 header: " + path);
    Wvs1Data data;
    data.scales.resize(ns);
    data.positions.resize(np);
    data.coefficients.resize(ns * np);
    in.read(reinterpret_cast<char*>(data.scales.data()), static_cast<std::streamsize>(ns * 8));
    in.read(reinterpret_cast<char*>(data.positions.data()), static_cast<std::streamsize>(np * 8));
    in.read(reinterpret_cast<char*>(data.coefficients.data()),
            static_cast<std::streamsize>(ns * np * sizeof(cplx)));
    if (!in) throw IoError("truncated WVS1 payload: " + path);
    return data;
}

} // namespace wavese
