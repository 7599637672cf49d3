#include "coarsedim/svg.hpp"

#include <algorithm>

namespace coarsedim::svg {

namespace {

constexpr Int kScale = 16;   // pixels per lattice unit
constexpr Int kMargin = 24;  // pixels around the window

const char* kPalette[8] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                           "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(std::span<const BoxFamily> fams, const Window& w) {
  space::validate_window(w);
  if (w.level != 2)
    fail(ErrorCode::Unsupported, "svg rendering supports level 2 only");
  for (const auto& f : fams) {
    families::validate_family(f);
    if (f.level != 2)
      fail(ErrorCode::Unsupported, "svg rendering supports level 2 only");
  }
  const Int span = w.hi - w.lo;
  const Int width = span * kScale + 2 * kMargin;
  const Int height = span * kScale + 2 * kMargin;
  // y axis flipped so larger coordinates render upward
  auto px = [&](Int x) { return kMargin + (x - w.lo) * kScale; };
  auto py = [&](Int y) { return kMargin + (w.hi - y) * kScale; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " +
         std::to_string(height) + "\">\n";
  out += "<rect width=\"" + std::to_string(width) + "\" height=\"" +
         std::to_string(height) + "\" fill=\"#ffffff\"/>\n";

  // level-2 lattice lines
  out += "<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  for (Int v = w.lo; v <= w.hi; ++v) {
    if (v % 2 != 0) continue;
    out += "<line x1=\"" + std::to_string(px(v)) + "\" y1=\"" +
           std::to_string(py(w.hi)) + "\" x2=\"" + std::to_string(px(v)) +
           "\" y2=\"" + std::to_string(py(w.lo)) + "\"/>\n";
    out += "<line x1=\"" + std::to_string(px(w.lo)) + "\" y1=\"" +
           std::to_string(py(v)) + "\" x2=\"" + std::to_string(px(w.hi)) +
           "\" y2=\"" + std::to_string(py(v)) + "\"/>\n";
  }
  out += "</g>\n";

  for (std::size_t fi = 0; fi < fams.size(); ++fi) {
    const auto& f = fams[fi];
    const char* color = kPalette[fi % 8];
    out += "<g fill=\"" + std::string(color) + "\" fill-opacity=\"0.35\" "
           "stroke=\"" + std::string(color) + "\" stroke-width=\"1\">\n";
    out += "<title>" + esc(f.label) + "</title>\n";
    for (const auto& m : families::members_meeting(f, w)) {
      auto box = families::member_box(f, m);
      Int x0 = std::max(box[0][0], w.lo), x1 = std::min(box[0][1], w.hi);
      Int y0 = std::max(box[1][0], w.lo), y1 = std::min(box[1][1], w.hi);
      if (x0 > x1 || y0 > y1) continue;
      // degenerate boxes keep a minimal visible thickness
      Int wpx = std::max<Int>((x1 - x0) * kScale, 4);
      Int hpx = std::max<Int>((y1 - y0) * kScale, 4);
      out += "<rect x=\"" + std::to_string(px(x0) - (x1 == x0 ? 2 : 0)) +
             "\" y=\"" + std::to_string(py(y1) - (y1 == y0 ? 2 : 0)) +
             "\" width=\"" + std::to_string(wpx) + "\" height=\"" +
             std::to_string(hpx) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace coarsedim::svg
