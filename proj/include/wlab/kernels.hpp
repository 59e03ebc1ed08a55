#pragma once

// Data-parallel inner loops shared by the geometry code. Every kernel has a
// scalar reference implementation; an AVX2/FMA variant is selected at runtime
// when the CPU supports it. Both variants must agree to rounding.

#include <cstddef>

namespace wlab::kernels {

// Closed-polygon edge sums, edge i joins vertex i and vertex (i + 1) mod n.
struct EdgeMoments {
    double twice_area = 0.0;  // shoelace sum
    double perimeter = 0.0;
    double momentum = 0.0;    // integral of |x|^2 over the boundary
    double first_x = 0.0;     // integral of x over the boundary
    double first_y = 0.0;
};

// Triangle-soup sums over an oriented closed surface.
struct TriangleMoments {
    double six_volume = 0.0;  // sum of p0 . (p1 x p2)
    double area = 0.0;
    double momentum = 0.0;
    double first_x = 0.0;
    double first_y = 0.0;
    double first_z = 0.0;
};

// Structure-of-arrays view of n triangles (p0, p1, p2).
struct TriangleArrays {
    const double* x0; const double* y0; const double* z0;
    const double* x1; const double* y1; const double* z1;
    const double* x2; const double* y2; const double* z2;
    std::size_t count;
};

// Uniform periodic grid sums for a support function (Riemann sums, without
// the 2 pi / n weight).
struct SupportMoments {
    double sum_h = 0.0;         // h
    double sum_area = 0.0;      // h^2 + h h''
    double sum_momentum = 0.0;  // h^3 + h^2 h'' / 2
};

struct KernelTable {
    const char* name;

    EdgeMoments (*polygon_moments)(const double* x, const double* y, std::size_t n);

    TriangleMoments (*triangle_moments)(const TriangleArrays& tri);

    // h, h', h'' of a0 + sum_k (a_k cos k t + b_k sin k t), k = 1..modes, at
    // t_j = 2 pi j / n. n must be a power of two; cos_table/sin_table hold
    // cos(2 pi j / n), sin(2 pi j / n).
    void (*fourier_synthesis)(double a0, const double* a, const double* b, std::size_t modes,
                              const double* cos_table, const double* sin_table, std::size_t n,
                              double* h, double* dh, double* d2h);

    SupportMoments (*support_moments)(const double* h, const double* d2h, std::size_t n);

    // sum_i a_i b_i c_i
    double (*dot3)(const double* a, const double* b, const double* c, std::size_t n);
};

const KernelTable& scalar();

// nullptr when the binary was built without AVX2 kernels or the CPU lacks AVX2/FMA.
const KernelTable* avx2();

// The table used by the library. Setting WLAB_KERNELS=scalar in the
// environment forces the scalar reference.
const KernelTable& active();

}  // namespace wlab::kernels
