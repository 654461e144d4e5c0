#pragma once

// Region-diagram SVG emission. Byte-identical across runs for identical
// inputs: integer geometry only, fixed palette, fixed iteration order.

#include "lagflux/engine.hpp"

#include <ostream>
#include <sstream>
#include <string>

namespace lagflux {

inline const char* region_label_color(RegionLabel l) {
    switch (l) {
        case RegionLabel::A: return "#4e79a7";
        case RegionLabel::B: return "#76b7b2";
        case RegionLabel::E: return "#59a14f";
        case RegionLabel::ExactRay: return "#8cd17d";
        case RegionLabel::C: return "#f28e2b";
        case RegionLabel::D: return "#edc948";
        case RegionLabel::LowerOnly: return "#ffbe7d";
        case RegionLabel::Unknown: return "#bab0ac";
    }
    return "#000000";
}

inline const char* region_label_legend(RegionLabel l) {
    switch (l) {
        case RegionLabel::A: return "A: every entry nonpositive, value inf";
        case RegionLabel::B: return "B: axis class, small-coordinate case, value inf";
        case RegionLabel::E: return "E: exact x1/m";
        case RegionLabel::ExactRay: return "X: proportional class, exact";
        case RegionLabel::C: return "C: lower bound x1/m";
        case RegionLabel::D: return "D: lower bound x2/n";
        case RegionLabel::LowerOnly: return "L: lower bound x/max(m,n)";
        case RegionLabel::Unknown: return "U: no case applies";
    }
    return "";
}

inline void render_region_svg(const RegionDiagram& d, std::ostream& os) {
    const int cell = 24, gap = 1, pad = 40, legend_h = 18;
    long cols = (long)(d.m_hi - d.m_lo) + 1;
    long rows = (long)(d.n_hi - d.n_lo) + 1;
    const RegionLabel legend_order[] = {RegionLabel::A,        RegionLabel::B,
                                        RegionLabel::E,        RegionLabel::ExactRay,
                                        RegionLabel::C,        RegionLabel::D,
                                        RegionLabel::LowerOnly, RegionLabel::Unknown};
    long width = pad * 2 + cols * (cell + gap);
    long height = pad * 2 + rows * (cell + gap) + legend_h * 8 + 16;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    os << "<text x=\"" << pad << "\" y=\"20\" font-family=\"monospace\" font-size=\"13\">"
       << "split torus case diagram, x = (" << to_string(d.x) << ")</text>\n";

    for (const auto& c : d.cells) {
        long col = (long)(c.m - d.m_lo);
        long row = (long)(d.n_hi - c.n);
        long x = pad + col * (cell + gap);
        long y = pad + row * (cell + gap);
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\""
           << cell << "\" fill=\"" << region_label_color(c.label) << "\"><title>(m,n)=("
           << c.m.str() << "," << c.n.str() << ") " << c.bound.str() << "</title></rect>\n";
        os << "<text x=\"" << x + cell / 2 << "\" y=\"" << y + cell / 2 + 4
           << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
           << region_label_char(c.label) << "</text>\n";
    }

    long ly = pad + rows * (cell + gap) + 20;
    for (RegionLabel l : legend_order) {
        os << "<rect x=\"" << pad << "\" y=\"" << ly - 11 << "\" width=\"12\" height=\"12\" fill=\""
           << region_label_color(l) << "\"/>\n";
        os << "<text x=\"" << pad + 18 << "\" y=\"" << ly
           << "\" font-family=\"monospace\" font-size=\"12\">" << region_label_legend(l)
           << "</text>\n";
        ly += legend_h;
    }
    os << "</svg>\n";
}

inline std::string render_region_svg(const RegionDiagram& d) {
    std::ostringstream os;
    render_region_svg(d, os);
    return os.str();
}

}  // namespace lagflux
