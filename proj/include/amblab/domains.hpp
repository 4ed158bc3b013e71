#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "amblab/grid.hpp"

namespace amblab {

/// Axis-aligned box [x0, x1] x [w0, w1] in the time-frequency plane.
struct TFBox {
    double x0 = 0, x1 = 0, w0 = 0, w1 = 0;
};

/**
 * Declarative region of the time-frequency plane. Closed primitive shapes,
 * composable by union and set difference; MaskFile defers to a rasterized
 * mask stored on disk.
 */
struct DomainSpec {
    enum class Kind { Ball, Rect, Annulus, Union, Difference, MaskFile };

    Kind kind = Kind::Ball;
    PhasePoint center{};             // Ball, Annulus
    double r = 0.0;                  // Ball
    double r_in = 0.0, r_out = 0.0;  // Annulus
    TFBox box{};                     // Rect
    std::vector<DomainSpec> parts;   // Union: all; Difference: {minuend, subtrahend}
    std::string path;                // MaskFile

    static DomainSpec ball(PhasePoint c, double radius);
    static DomainSpec rect(double x0, double x1, double w0, double w1);
    static DomainSpec annulus(PhasePoint c, double inner, double outer);
    static DomainSpec union_of(std::vector<DomainSpec> parts);
    static DomainSpec difference(DomainSpec minuend, DomainSpec subtrahend);
    static DomainSpec mask_file(std::string csv_path);

    /// Membership test at a point; not available for MaskFile-bearing specs.
    bool contains(double x, double w) const;

    /// Axis-aligned bounding box; not available for MaskFile-bearing specs.
    TFBox bounding_box() const;

    bool references_mask_file() const;
};

/// Rasterized domain: one flag per grid cell, cell-center rule.
struct DomainMask {
    TimeGrid grid;
    std::vector<std::uint8_t> cells; // row-major, index k * n + l
    std::size_t count = 0;           // number of set cells

    explicit DomainMask(const TimeGrid& g) : grid(g), cells(g.n * g.n, 0) {}

    bool at(std::size_t k, std::size_t l) const { return cells[k * grid.n + l] != 0; }
    double cell_area() const { return grid.cell_area(); }
};

/**
 * Rasterize a spec on a grid: a cell belongs to the mask iff its center
 * satisfies the membership predicate. The spec's bounding box must lie inside
 * the grid's covered box (DomainOutsideGrid) and the result must be nonempty
 * (EmptyDomain). MaskFile specs are loaded and must match the grid.
 */
DomainMask rasterize(const DomainSpec& spec, const TimeGrid& grid);

/// Lebesgue measure of the rasterized domain: count x cell area.
double measure(const DomainMask& mask);

enum class Tristate { No, Yes, Unknown };

/**
 * Whether every ball around the origin meets the domain in positive measure.
 * Decided analytically from the spec; MaskFile and inconclusive compositions
 * yield Unknown.
 */
Tristate origin_density_positive(const DomainSpec& spec);

/// Union of intervals on the time axis, used by the correlation objective.
struct Domain1D {
    std::vector<std::pair<double, double>> intervals;

    static Domain1D interval(double a, double b);
};

/// Rasterized 1-D domain over the centered shift grid x_k = (k - n/2) dx.
struct Mask1D {
    TimeGrid grid;
    std::vector<std::uint8_t> cells;
    std::size_t count = 0;

    explicit Mask1D(const TimeGrid& g) : grid(g), cells(g.n, 0) {}
};

Mask1D rasterize_1d(const Domain1D& dom, const TimeGrid& grid);

double measure_1d(const Mask1D& mask);

} // namespace amblab
