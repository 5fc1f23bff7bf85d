#pragma once

#include <string>
#include <vector>

#include "wifiholo/hologram.hpp"
#include "wifiholo/imaging.hpp"

namespace wifiholo {

struct Curve1D {
    std::vector<double> coordinates;
    std::vector<double> values;

    Curve1D normalized() const;
};

std::vector<double> find_crests(const Curve1D& c, double min_prominence = 0.2);

enum class FocusMetric { Peak, Sharpness };

struct FocusReport {
    std::vector<double> z;
    std::vector<double> metric;
    double argmax_z = 0.0;
};

double slice_metric(const ImageSlice& s, FocusMetric m);

FocusReport focus_curve(const std::vector<ImageSlice>& stack, FocusMetric m = FocusMetric::Peak);

double image_similarity(const ImageSlice& a, const ImageSlice& b);

double fwhm(const Curve1D& c);

enum class Axis { X, Y };

// Profile of a slice through voxel row/column containing (x, y).
Curve1D slice_profile(const ImageSlice& s, Axis axis, double x, double y);

struct PsfOptions {
    double half_extent = 0.4;
    double step = 0.002;
    BackprojectOptions backproject;
};

// Half-power width of the point response through the target along the axis.
double psf_fwhm(const Hologram& h, const FrequencyBin& bin, const Point3& target, Axis axis,
                const PsfOptions& opt = {});

struct LocalMax {
    int i = 0;
    int j = 0;
    double value = 0.0;
};

// Voxels not smaller than their 8 neighbours (edges compare to existing neighbours).
std::vector<LocalMax> local_maxima(const ImageSlice& s, double min_fraction_of_peak = 0.0);

}  // namespace wifiholo
