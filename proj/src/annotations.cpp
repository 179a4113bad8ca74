#include "roadgrid/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace roadgrid {

std::string marking_name(Marking m) {
    switch (m) {
        case Marking::solid: return "solid";
        case Marking::broken: return "broken";
        case Marking::solid_50: return "solid_50";
        case Marking::broken_50: return "broken_50";
        case Marking::none: return "none";
    }
    throw Error("bad marking enum");
}

Marking marking_from_name(const std::string& name) {
    if (name == "solid") return Marking::solid;
    if (name == "broken") return Marking::broken;
    if (name == "solid_50") return Marking::solid_50;
    if (name == "broken_50") return Marking::broken_50;
    if (name == "none") return Marking::none;
    throw ParseError("unknown marking class '" + name + "'");
}

std::uint8_t marking_code(Marking m) {
    switch (m) {
        case Marking::solid: return kCodeSolid;
        case Marking::broken: return kCodeBroken;
        case Marking::solid_50: return kCodeSolid50;
        case Marking::broken_50: return kCodeBroken50;
        case Marking::none: return kCodeOffLane;
    }
    throw Error("bad marking enum");
}

Centerline::Centerline(const LaneAnnotation& ann, double tol) {
    pts_ = flatten(autosmooth(ann.points), tol);
    cum_.resize(pts_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i)
        cum_[i] = cum_[i - 1] + (pts_[i] - pts_[i - 1]).norm();
}

CenterlineHit Centerline::nearest(const Vec2& p) const {
    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best_seg = 0;
    double best_t = 0.0;
    Vec2 best_foot;
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        Vec2 ab = pts_[i + 1] - pts_[i];
        double len2 = ab.squared_norm();
        double t = len2 > 0.0 ? std::clamp((p - pts_[i]).dot(ab) / len2, 0.0, 1.0) : 0.0;
        Vec2 foot = pts_[i] + t * ab;
        double d2 = (p - foot).squared_norm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best_seg = i;
            best_t = t;
            best_foot = foot;
        }
    }

    Vec2 seg = pts_[best_seg + 1] - pts_[best_seg];
    CenterlineHit hit;
    hit.distance = std::sqrt(best_d2);
    hit.arclength = cum_[best_seg] + best_t * seg.norm();
    hit.tangent = std::atan2(seg.y, seg.x);
    double cross = seg.normalized().cross(p - best_foot);
    if (std::abs(cross) < 1e-9)
        hit.side = Side::on;
    else
        hit.side = cross > 0.0 ? Side::left : Side::right;
    return hit;
}

Pose Centerline::pose_at(double arclength) const {
    double s = std::clamp(arclength, 0.0, length());
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = it == cum_.begin() ? 0 : (it - cum_.begin()) - 1;
    if (i + 1 >= pts_.size()) i = pts_.size() - 2;
    Vec2 seg = pts_[i + 1] - pts_[i];
    double len = seg.norm();
    double t = len > 0.0 ? (s - cum_[i]) / len : 0.0;
    Vec2 pos = pts_[i] + t * seg;
    return {pos.x, pos.y, std::atan2(seg.y, seg.x)};
}

CenterlineHit nearest_centerline(const LaneAnnotation& ann, const Vec2& p) {
    return Centerline(ann).nearest(p);
}

std::vector<LaneAnnotation> read_annotations(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw StorageFailure("cannot open annotation file " + file.string());

    std::vector<LaneAnnotation> out;
    LaneAnnotation cur;
    bool in_lane = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto fail = [&](const std::string& msg) {
            throw ParseError(file.string() + ":" + std::to_string(line_no) + ": " + msg);
        };
        if (tag == "lane") {
            if (in_lane) fail("nested 'lane' block");
            std::string left, right;
            if (!(ls >> cur.draw_order >> cur.lane_width >> left >> right))
                fail("malformed 'lane' header");
            if (cur.lane_width <= 0.0) fail("lane_width must be positive");
            cur.left_marking = marking_from_name(left);
            cur.right_marking = marking_from_name(right);
            cur.points.clear();
            in_lane = true;
        } else if (tag == "pt") {
            if (!in_lane) fail("'pt' outside a lane block");
            Vec2 p;
            if (!(ls >> p.x >> p.y)) fail("malformed 'pt' line");
            cur.points.push_back(p);
        } else if (tag == "end") {
            if (!in_lane) fail("'end' outside a lane block");
            if (cur.points.size() < 2) fail("lane needs at least 2 points");
            out.push_back(cur);
            in_lane = false;
        } else {
            fail("unknown tag '" + tag + "'");
        }
    }
    if (in_lane) throw ParseError(file.string() + ": unterminated lane block");
    return out;
}

void write_annotations(const std::filesystem::path& file,
                       const std::vector<LaneAnnotation>& annotations) {
    std::ofstream out(file);
    if (!out) throw StorageFailure("cannot write annotation file " + file.string());
    out << "# lane annotations v1\n";
    for (const LaneAnnotation& a : annotations) {
        char header[128];
        std::snprintf(header, sizeof(header), "lane %d %.6f %s %s\n", a.draw_order,
                      a.lane_width, marking_name(a.left_marking).c_str(),
                      marking_name(a.right_marking).c_str());
        out << header;
        for (const Vec2& p : a.points) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "pt %.6f %.6f\n", p.x, p.y);
            out << buf;
        }
        out << "end\n";
    }
    if (!out) throw StorageFailure("failed writing " + file.string());
}

}  // namespace roadgrid
