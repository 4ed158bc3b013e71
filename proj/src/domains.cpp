#include "amblab/domains.hpp"

#include <algorithm>
#include <cmath>

#include "amblab/io.hpp"

namespace amblab {

DomainSpec DomainSpec::ball(PhasePoint c, double radius) {
    if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
    DomainSpec s;
    s.kind = Kind::Ball;
    s.center = c;
    s.r = radius;
    return s;
}

DomainSpec DomainSpec::rect(double x0, double x1, double w0, double w1) {
    if (!(x0 < x1) || !(w0 < w1)) throw InvalidArgument("rect needs x0 < x1 and w0 < w1");
    DomainSpec s;
    s.kind = Kind::Rect;
    s.box = {x0, x1, w0, w1};
    return s;
}

DomainSpec DomainSpec::annulus(PhasePoint c, double inner, double outer) {
    if (!(inner >= 0.0) || !(inner < outer)) throw InvalidArgument("annulus needs 0 <= r_in < r_out");
    DomainSpec s;
    s.kind = Kind::Annulus;
    s.center = c;
    s.r_in = inner;
    s.r_out = outer;
    return s;
}

DomainSpec DomainSpec::union_of(std::vector<DomainSpec> parts) {
    if (parts.empty()) throw InvalidArgument("union needs at least one part");
    DomainSpec s;
    s.kind = Kind::Union;
    s.parts = std::move(parts);
    return s;
}

DomainSpec DomainSpec::difference(DomainSpec minuend, DomainSpec subtrahend) {
    DomainSpec s;
    s.kind = Kind::Difference;
    s.parts.push_back(std::move(minuend));
    s.parts.push_back(std::move(subtrahend));
    return s;
}

DomainSpec DomainSpec::mask_file(std::string csv_path) {
    DomainSpec s;
    s.kind = Kind::MaskFile;
    s.path = std::move(csv_path);
    return s;
}

bool DomainSpec::contains(double x, double w) const {
    switch (kind) {
        case Kind::Ball:
            return std::hypot(x - center.x, w - center.w) <= r;
        case Kind::Rect:
            return x >= box.x0 && x <= box.x1 && w >= box.w0 && w <= box.w1;
        case Kind::Annulus: {
            const double d = std::hypot(x - center.x, w - center.w);
            return d >= r_in && d <= r_out;
        }
        case Kind::Union:
            return std::any_of(parts.begin(), parts.end(),
                               [&](const DomainSpec& p) { return p.contains(x, w); });
        case Kind::Difference:
            return parts[0].contains(x, w) && !parts[1].contains(x, w);
        case Kind::MaskFile:
            throw InvalidArgument("mask-file domains have no analytic membership test");
    }
    return false;
}

TFBox DomainSpec::bounding_box() const {
    switch (kind) {
        case Kind::Ball:
            return {center.x - r, center.x + r, center.w - r, center.w + r};
        case Kind::Rect:
            return box;
        case Kind::Annulus:
            return {center.x - r_out, center.x + r_out, center.w - r_out, center.w + r_out};
        case Kind::Union: {
            TFBox b = parts.front().bounding_box();
            for (std::size_t i = 1; i < parts.size(); ++i) {
                const TFBox p = parts[i].bounding_box();
                b.x0 = std::min(b.x0, p.x0);
                b.x1 = std::max(b.x1, p.x1);
                b.w0 = std::min(b.w0, p.w0);
                b.w1 = std::max(b.w1, p.w1);
            }
            return b;
        }
        case Kind::Difference:
            return parts[0].bounding_box();
        case Kind::MaskFile:
            throw InvalidArgument("mask-file domains have no analytic bounding box");
    }
    return {};
}

bool DomainSpec::references_mask_file() const {
    if (kind == Kind::MaskFile) return true;
    return std::any_of(parts.begin(), parts.end(),
                       [](const DomainSpec& p) { return p.references_mask_file(); });
}

DomainMask rasterize(const DomainSpec& spec, const TimeGrid& grid) {
    if (spec.kind == DomainSpec::Kind::MaskFile) {
        DomainMask m = io::read_mask_csv(spec.path);
        if (m.grid != grid) throw GridMismatch("mask file grid does not match the target grid");
        if (m.count == 0) throw EmptyDomain("mask file contains no cells");
        return m;
    }
    if (spec.references_mask_file())
        throw InvalidArgument("composite domains may not mix analytic parts with mask files");

    const TFBox b = spec.bounding_box();
    const double tx = grid.time_half_width();
    const double tw = grid.freq_half_width();
    if (b.x0 < -tx || b.x1 > tx || b.w0 < -tw || b.w1 > tw)
        throw DomainOutsideGrid("domain bounding box exceeds the grid's covered box");

    DomainMask m(grid);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.t(k);
        for (std::size_t l = 0; l < grid.n; ++l) {
            if (spec.contains(x, grid.w(l))) {
                m.cells[k * grid.n + l] = 1;
                ++m.count;
            }
        }
    }
    if (m.count == 0) throw EmptyDomain("domain rasterizes to no cells");
    return m;
}

double measure(const DomainMask& mask) {
    return static_cast<double>(mask.count) * mask.cell_area();
}

namespace {

bool touches_origin(const DomainSpec& s) {
    if (s.references_mask_file()) return true; // unknown; treat as touching
    return s.contains(0.0, 0.0);
}

Tristate origin_in_interior(const DomainSpec& s) {
    switch (s.kind) {
        case DomainSpec::Kind::Ball:
            return std::hypot(s.center.x, s.center.w) < s.r ? Tristate::Yes : Tristate::No;
        case DomainSpec::Kind::Rect:
            return (s.box.x0 < 0 && 0 < s.box.x1 && s.box.w0 < 0 && 0 < s.box.w1) ? Tristate::Yes
                                                                                  : Tristate::No;
        case DomainSpec::Kind::Annulus: {
            // r_in = 0 degenerates to the closed ball, whose interior keeps
            // the center point.
            const double d = std::hypot(s.center.x, s.center.w);
            const bool inside = s.r_in == 0.0 ? d < s.r_out : (d > s.r_in && d < s.r_out);
            return inside ? Tristate::Yes : Tristate::No;
        }
        case DomainSpec::Kind::Union: {
            bool any_boundary = false;
            for (const auto& p : s.parts) {
                const Tristate t = origin_in_interior(p);
                if (t == Tristate::Yes) return Tristate::Yes;
                if (t != Tristate::No || touches_origin(p)) any_boundary = true;
            }
            // Touching boundaries may tile a neighborhood; stay inconclusive.
            return any_boundary ? Tristate::Unknown : Tristate::No;
        }
        case DomainSpec::Kind::Difference: {
            const Tristate a = origin_in_interior(s.parts[0]);
            if (a == Tristate::Yes && !touches_origin(s.parts[1])) return Tristate::Yes;
            if (a == Tristate::No && !touches_origin(s.parts[0])) return Tristate::No;
            return Tristate::Unknown;
        }
        case DomainSpec::Kind::MaskFile:
            return Tristate::Unknown;
    }
    return Tristate::Unknown;
}

} // namespace

Tristate origin_density_positive(const DomainSpec& spec) {
    switch (spec.kind) {
        case DomainSpec::Kind::Ball:
            // Closure membership: boundary contact still leaves positive mass
            // in every neighborhood of the origin.
            return std::hypot(spec.center.x, spec.center.w) <= spec.r ? Tristate::Yes : Tristate::No;
        case DomainSpec::Kind::Rect:
            return spec.contains(0.0, 0.0) ? Tristate::Yes : Tristate::No;
        case DomainSpec::Kind::Annulus:
            return spec.contains(0.0, 0.0) ? Tristate::Yes : Tristate::No;
        case DomainSpec::Kind::Union: {
            bool any_unknown = false;
            for (const auto& p : spec.parts) {
                const Tristate t = origin_density_positive(p);
                if (t == Tristate::Yes) return Tristate::Yes;
                if (t == Tristate::Unknown) any_unknown = true;
            }
            return any_unknown ? Tristate::Unknown : Tristate::No;
        }
        case DomainSpec::Kind::Difference: {
            const Tristate a = origin_density_positive(spec.parts[0]);
            if (a == Tristate::No) return Tristate::No;
            const Tristate b_int = origin_in_interior(spec.parts[1]);
            if (b_int == Tristate::Yes) return Tristate::No;
            if (a == Tristate::Yes && !touches_origin(spec.parts[1])) return Tristate::Yes;
            return Tristate::Unknown;
        }
        case DomainSpec::Kind::MaskFile:
            return Tristate::Unknown;
    }
    return Tristate::Unknown;
}

Domain1D Domain1D::interval(double a, double b) {
    if (!(a < b)) throw InvalidArgument("interval needs a < b");
    return Domain1D{{{a, b}}};
}

Mask1D rasterize_1d(const Domain1D& dom, const TimeGrid& grid) {
    if (dom.intervals.empty()) throw InvalidArgument("1-D domain has no intervals");
    const double tx = grid.time_half_width();
    for (const auto& [a, b] : dom.intervals) {
        if (!(a < b)) throw InvalidArgument("interval needs a < b");
        if (a < -tx || b > tx) throw DomainOutsideGrid("interval exceeds the covered time box");
    }
    Mask1D m(grid);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.t(k);
        for (const auto& [a, b] : dom.intervals) {
            if (x >= a && x <= b) {
                m.cells[k] = 1;
                ++m.count;
                break;
            }
        }
    }
    if (m.count == 0) throw EmptyDomain("1-D domain rasterizes to no cells");
    return m;
}

double measure_1d(const Mask1D& mask) {
    return static_cast<double>(mask.count) * mask.grid.dx;
}

} // namespace amblab
