#include "pathwave/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "pathwave/errors.hpp"

namespace pathwave {

namespace {

constexpr char kMagic[4] = {'A', 'F', 'L', 'D'};
constexpr std::uint8_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
public:
    explicit Reader(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open " + path);
        buf_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        path_ = path;
    }

    // Header reads throw MalformedHeader on shortfall, payload reads
    // TruncatedPayload: a file that ends inside its own header never
    // declared a shape at all.
    std::uint8_t u8_header() {
        if (pos_ + 1 > buf_.size()) throw MalformedHeader(path_ + ": header cut short");
        return static_cast<std::uint8_t>(buf_[pos_++]);
    }

    std::uint32_t u32_header() {
        if (pos_ + 4 > buf_.size()) throw MalformedHeader(path_ + ": header cut short");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64_header() {
        if (pos_ + 8 > buf_.size()) throw MalformedHeader(path_ + ": header cut short");
        return f64_consume();
    }

    void read_payload(double* dst, std::size_t count) {
        if (pos_ + 8 * count > buf_.size())
            throw TruncatedPayload(path_ + ": payload ends early, expected " +
                                   std::to_string(count) + " values");
        for (std::size_t i = 0; i < count; ++i) dst[i] = f64_consume();
    }

    bool exhausted() const { return pos_ == buf_.size(); }
    const std::string& path() const { return path_; }

private:
    double f64_at(std::size_t p) const {
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i)
            bits |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf_[p + i])) << (8 * i);
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }

    double f64_consume() {
        double v = f64_at(pos_);
        pos_ += 8;
        return v;
    }

    std::string path_;
    std::vector<char> buf_;
    std::size_t pos_ = 0;
};

struct Header {
    Grid grid;
    int rank = 0;
};

Header read_header(Reader& r) {
    char magic[4];
    for (auto& ch : magic) ch = static_cast<char>(r.u8_header());
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw MalformedHeader(r.path() + ": bad magic");
    if (r.u8_header() != kVersion) throw MalformedHeader(r.path() + ": unsupported version");
    const int dim = r.u8_header();
    const int rank = r.u8_header();
    if (r.u8_header() != 0) throw MalformedHeader(r.path() + ": nonzero padding byte");
    if (rank != 0 && rank != 1) throw MalformedHeader(r.path() + ": rank must be 0 or 1");
    if (dim != 2 && dim != 3)
        throw DimensionMismatch(r.path() + ": dim must be 2 or 3, got " + std::to_string(dim));

    std::array<int, kMaxDim> n{1, 1, 1};
    std::array<double, kMaxDim> length{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
        std::uint32_t c = r.u32_header();
        if (c < 4 || c % 2 != 0 || c > (1u << 24))
            throw DimensionMismatch(r.path() + ": unusable cell count " + std::to_string(c));
        n[a] = static_cast<int>(c);
    }
    for (int a = 0; a < dim; ++a) {
        length[a] = r.f64_header();
        if (!(length[a] > 0.0))
            throw DimensionMismatch(r.path() + ": non-positive domain length");
    }
    return Header{Grid(dim, n, length), rank};
}

std::string header_bytes(const Grid& g, int rank) {
    std::string out;
    out.append(kMagic, 4);
    out.push_back(static_cast<char>(kVersion));
    out.push_back(static_cast<char>(g.dim()));
    out.push_back(static_cast<char>(rank));
    out.push_back('\0');
    for (int a = 0; a < g.dim(); ++a) put_u32(out, static_cast<std::uint32_t>(g.n(a)));
    for (int a = 0; a < g.dim(); ++a) put_f64(out, g.length(a));
    return out;
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path);
}

} // namespace

void write_field(const std::string& path, const ScalarField& f) {
    std::string bytes = header_bytes(f.grid(), 0);
    bytes.reserve(bytes.size() + 8 * f.size());
    for (std::size_t i = 0; i < f.size(); ++i) put_f64(bytes, f[i]);
    write_bytes(path, bytes);
}

void write_field(const std::string& path, const VectorField& f) {
    std::string bytes = header_bytes(f.grid(), 1);
    bytes.reserve(bytes.size() + 8 * f.grid().size() * f.dim());
    for (int a = 0; a < f.dim(); ++a)
        for (std::size_t i = 0; i < f.grid().size(); ++i) put_f64(bytes, f.comp(a)[i]);
    write_bytes(path, bytes);
}

ScalarField read_scalar_field(const std::string& path) {
    Reader r(path);
    Header h = read_header(r);
    if (h.rank != 0)
        throw DimensionMismatch(path + ": expected a scalar field, file holds a vector field");
    ScalarField f(h.grid);
    r.read_payload(f.data(), f.size());
    return f;
}

VectorField read_vector_field(const std::string& path) {
    Reader r(path);
    Header h = read_header(r);
    if (h.rank != 1)
        throw DimensionMismatch(path + ": expected a vector field, file holds a scalar field");
    VectorField f(h.grid);
    for (int a = 0; a < h.grid.dim(); ++a) r.read_payload(f.comp(a).data(), h.grid.size());
    return f;
}

} // namespace pathwave
