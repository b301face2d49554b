#include "selgrade/geometry.hpp"

#include <cmath>

namespace selgrade {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::EquatorPoint: return "EquatorPoint";
        case ErrorKind::Overflow: return "Overflow";
        case ErrorKind::Degenerate: return "Degenerate";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::InvalidChain: return "InvalidChain";
        case ErrorKind::NoCycle: return "NoCycle";
        case ErrorKind::PairingViolation: return "PairingViolation";
        case ErrorKind::BasePointMismatch: return "BasePointMismatch";
        case ErrorKind::NotFound: return "NotFound";
        case ErrorKind::CertificatesAbsent: return "CertificatesAbsent";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::Io: return "Io";
    }
    return "Unknown";
}

SpherePoint SpherePoint::from_unit(Vector v) {
    if (v.size() < 1 || !v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTolerance) {
        throw Error(ErrorKind::InvalidArgument, "vector is not a unit vector");
    }
    return SpherePoint(std::move(v));
}

Vector PoincarePoint::as_vector() const {
    Vector out(s.size() + 1);
    out.head(s.size()) = s;
    out[s.size()] = r;
    return out;
}

SpherePoint normalize(const Vector& v) {
    if (!v.allFinite()) {
        throw Error(ErrorKind::InvalidArgument, "vector has non-finite coordinates");
    }
    const double norm = v.stableNorm();
    if (norm <= kZeroNormThreshold) {
        throw Error(ErrorKind::ZeroVector, "cannot normalize a vector of norm " + std::to_string(norm));
    }
    return SpherePoint(v / norm);
}

SpherePoint antipode(const SpherePoint& s) { return SpherePoint(-s.coords()); }

ProjectivePoint projectivize(const SpherePoint& s) {
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        if (std::abs(s[i]) > kCanonicalSignThreshold) {
            return ProjectivePoint(s[i] > 0.0 ? s : antipode(s));
        }
    }
    return ProjectivePoint(s);
}

PoincarePoint poincare_project(const Vector& v) {
    // |(v,1)| = hypot(|v|, 1), stable for large |v|.
    const double scale = std::hypot(v.stableNorm(), 1.0);
    return PoincarePoint{v / scale, 1.0 / scale};
}

Vector poincare_unproject(const PoincarePoint& p) {
    if (p.r <= kEquatorThreshold) {
        throw Error(ErrorKind::EquatorPoint, "point at infinity has no preimage");
    }
    return p.s / p.r;
}

PoincarePoint equator_embed(const SpherePoint& s) { return PoincarePoint{s.coords(), 0.0}; }

double chordal_distance(const Vector& a, const Vector& b) { return (a - b).norm(); }

double chordal_distance(const PoincarePoint& a, const PoincarePoint& b) {
    const double ds = (a.s - b.s).squaredNorm();
    const double dr = a.r - b.r;
    return std::sqrt(ds + dr * dr);
}

}  // namespace selgrade
