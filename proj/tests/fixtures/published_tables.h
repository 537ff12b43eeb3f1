#pragma once

// Published robustness of eight optical flow models over twenty corruptions,
// with the pairwise comparison matrix and rankings derived from them.

#include <array>
#include <string>
#include <vector>

namespace fixtures {

inline const std::vector<std::string> kModels = {"GMFlow", "MS-RAFT+", "FlowFormer", "GMA", "SPyNet", "RAFT", "FlowNet2", "PWCNet"};

// Row order of the per-corruption tables.
inline const std::vector<std::string> kCorruptions = {
    "brightness", "contrast", "saturate", "defocus_blur", "gaussian_blur",
    "glass_blur", "motion_blur", "zoom_blur", "gaussian_noise", "impulse_noise",
    "speckle_noise", "shot_noise", "pixelate", "jpeg", "elastic",
    "fog", "frost", "rain", "snow", "spatter"};

// R_EPE, one array per model in kModels order.
inline const std::vector<std::vector<double>> kEpe = {
    {0.33, 0.46, 0.34, 0.53, 0.66, 0.85, 1.34, 1.88, 4.70, 6.64, 3.90, 3.52, 1.96, 3.32, 1.37, 0.80, 8.20, 8.60, 3.60, 6.58},  // GMFlow
    {0.33, 0.87, 0.34, 0.51, 0.58, 0.53, 1.31, 1.81, 5.70, 7.39, 4.22, 4.36, 1.60, 2.09, 1.16, 0.91, 7.38, 19.99, 4.69, 6.63},  // MS-RAFT+
    {0.68, 0.93, 0.42, 0.55, 0.63, 0.64, 1.35, 1.66, 6.56, 7.33, 5.47, 5.75, 1.48, 2.89, 2.62, 0.86, 8.18, 11.13, 7.92, 8.41},  // FlowFormer
    {0.36, 0.68, 0.43, 0.56, 0.62, 0.61, 1.19, 1.54, 2.81, 4.08, 5.32, 3.15, 1.11, 1.92, 1.24, 0.84, 8.13, 33.00, 5.30, 7.75},  // GMA
    {2.72, 8.23, 3.36, 0.57, 0.76, 0.75, 2.32, 4.82, 2.22, 2.92, 1.95, 1.86, 1.22, 2.95, 1.08, 5.20, 6.97, 18.20, 12.08, 5.71},  // SPyNet
    {0.92, 1.32, 0.93, 1.03, 1.10, 1.05, 2.06, 3.14, 7.43, 6.51, 6.62, 6.74, 1.65, 3.19, 1.33, 1.97, 8.37, 42.41, 7.16, 7.98},  // RAFT
    {0.45, 1.87, 0.51, 0.53, 0.60, 0.50, 1.60, 2.36, 1.33, 2.37, 1.32, 1.16, 0.77, 2.56, 0.79, 1.74, 7.22, 63.71, 39.79, 9.13},  // FlowNet2
    {1.04, 2.98, 1.21, 0.98, 1.11, 0.91, 1.95, 3.52, 2.79, 3.57, 2.74, 2.59, 0.92, 2.88, 1.42, 16.84, 8.27, 40.18, 39.73, 9.33},  // PWCNet
};

// R_1px, one array per model in kModels order.
inline const std::vector<std::vector<double>> kOnePx = {
    {3.31, 6.71, 3.30, 6.17, 7.77, 20.87, 18.35, 35.80, 57.95, 66.14, 62.01, 56.71, 68.09, 83.54, 40.00, 14.42, 63.96, 64.20, 70.60, 67.90},  // GMFlow
    {2.88, 6.69, 2.87, 4.01, 4.45, 4.45, 14.06, 21.84, 35.74, 45.72, 34.96, 31.67, 45.83, 41.69, 32.49, 10.32, 29.96, 36.74, 33.21, 28.22},  // MS-RAFT+
    {2.82, 5.48, 2.39, 3.85, 4.32, 4.04, 14.03, 22.72, 27.83, 23.58, 25.52, 26.02, 31.68, 42.62, 35.78, 9.66, 34.19, 33.50, 40.20, 40.38},  // FlowFormer
    {3.22, 6.43, 3.47, 5.02, 5.48, 5.60, 14.40, 23.17, 24.70, 31.31, 25.22, 23.11, 25.86, 38.70, 27.24, 11.21, 34.30, 43.98, 40.82, 36.11},  // GMA
    {14.67, 38.90, 17.34, 10.16, 15.44, 16.94, 19.55, 46.67, 42.23, 53.45, 46.32, 40.44, 50.63, 53.97, 34.62, 28.15, 45.13, 68.87, 74.27, 48.60},  // SPyNet
    {3.49, 5.73, 3.33, 4.70, 5.12, 5.13, 14.33, 22.80, 27.92, 29.65, 26.05, 25.64, 21.47, 37.72, 19.43, 12.01, 32.75, 38.89, 37.04, 30.37},  // RAFT
    {3.16, 9.26, 3.40, 3.35, 4.05, 3.12, 14.07, 24.63, 11.24, 15.70, 12.57, 9.87, 7.74, 31.00, 16.27, 11.77, 33.69, 48.25, 68.67, 45.03},  // FlowNet2
    {7.38, 30.07, 9.92, 6.51, 7.72, 5.96, 16.25, 50.33, 26.87, 35.67, 26.83, 23.75, 8.67, 49.15, 28.18, 20.96, 50.31, 73.51, 90.80, 65.41},  // PWCNet
};

// R_Fl, one array per model in kModels order.
inline const std::vector<std::vector<double>> kFl = {
    {1.12, 1.71, 0.96, 1.45, 1.88, 1.82, 7.51, 9.90, 21.67, 28.70, 20.64, 17.77, 18.71, 27.92, 6.89, 5.32, 29.96, 32.72, 29.90, 27.09},  // GMFlow
    {1.02, 3.24, 1.03, 1.47, 1.63, 1.37, 6.16, 7.13, 22.12, 29.05, 17.18, 17.77, 6.78, 12.82, 5.54, 6.33, 21.25, 31.22, 30.91, 20.24},  // MS-RAFT+
    {1.05, 1.96, 0.88, 1.19, 1.37, 1.17, 5.77, 6.77, 18.30, 14.47, 15.60, 16.01, 2.59, 14.96, 11.01, 5.67, 23.87, 20.83, 33.82, 26.92},  // FlowFormer
    {1.04, 2.20, 1.18, 2.01, 2.22, 1.91, 6.18, 7.16, 12.96, 18.13, 12.66, 11.59, 1.78, 11.51, 6.40, 6.42, 22.31, 36.18, 33.35, 21.81},  // GMA
    {8.91, 27.23, 11.31, 1.36, 2.12, 1.36, 10.05, 28.37, 14.88, 20.41, 12.89, 11.98, 2.90, 18.08, 4.77, 19.97, 30.13, 56.38, 66.65, 33.82},  // SPyNet
    {1.61, 2.64, 1.47, 2.07, 2.26, 1.97, 6.35, 7.61, 18.99, 18.32, 16.48, 17.08, 2.00, 13.67, 4.78, 7.11, 21.76, 31.99, 31.37, 19.87},  // RAFT
    {1.05, 4.74, 1.10, 1.06, 1.27, 0.96, 6.47, 9.04, 5.06, 7.48, 4.19, 3.92, 0.88, 11.85, 2.12, 7.82, 21.15, 41.15, 61.60, 28.99},  // FlowNet2
    {3.00, 7.42, 3.68, 2.78, 3.09, 2.47, 7.47, 15.64, 9.89, 14.45, 8.00, 7.88, 2.22, 15.91, 5.47, 12.89, 27.44, 57.05, 81.91, 40.19},  // PWCNet
};

// Average rows as printed: {EPE, 1px, Fl} per model.
inline const std::vector<std::array<double, 3>> kAverage = {
    {2.98, 40.89, 14.68},  // GMFlow
    {3.62, 23.39, 12.21},  // MS-RAFT+
    {3.77, 21.53, 11.21},  // FlowFormer
    {4.03, 21.47, 10.95},  // GMA
    {4.29, 38.32, 19.18},  // SPyNet
    {5.64, 20.18, 11.47},  // RAFT
    {7.01, 18.84, 11.09},  // FlowNet2
    {7.25, 31.71, 16.44},  // PWCNet
};

// Median rows as printed: {EPE, 1px, Fl} per model.
inline const std::vector<std::array<double, 3>> kMedian = {
    {1.92, 48.35, 13.83},  // GMFlow
    {1.71, 29.09, 6.95},  // MS-RAFT+
    {2.14, 24.55, 8.89},  // FlowFormer
    {1.39, 23.93, 6.79},  // GMA
    {2.82, 41.33, 13.88},  // SPyNet
    {2.60, 22.13, 7.36},  // RAFT
    {1.47, 12.17, 4.90},  // FlowNet2
    {2.77, 26.85, 7.94},  // PWCNet
};

// Pairwise matrix: counts[i][j] = corruptions where model i beats model j.
inline const std::vector<std::string> kMatrixModels = {"GMFlow", "GMA", "MS-RAFT+", "FlowFormer", "SPyNet", "RAFT", "PWCNet", "FlowNet2"};
inline const std::vector<std::vector<int>> kMatrix = {
    { 0,  9,  7, 16, 10, 16, 14, 12},  // GMFlow
    {11,  0,  9, 19, 12, 17, 14, 14},  // GMA
    {13, 11,  0, 19, 12, 18, 15, 14},  // MS-RAFT+
    { 4,  1,  1,  0,  8,  9, 13,  8},  // FlowFormer
    {10,  8,  8, 12,  0, 12, 14,  5},  // SPyNet
    { 4,  3,  2, 11,  8,  0, 14,  8},  // RAFT
    { 6,  6,  5,  7,  6,  6,  0,  4},  // PWCNet
    { 8,  6,  6, 12, 15, 12, 16,  0},  // FlowNet2
};

// Published rankings, best first.
inline const std::vector<std::string> kAverageOrder = {"GMFlow", "MS-RAFT+", "FlowFormer", "GMA", "SPyNet", "RAFT", "FlowNet2", "PWCNet"};
inline const std::vector<std::string> kMedianOrder = {"GMA", "FlowNet2", "MS-RAFT+", "GMFlow", "FlowFormer", "RAFT", "PWCNet", "SPyNet"};
inline const std::vector<std::string> kSchulzeOrder = {"MS-RAFT+", "GMA", "FlowNet2", "GMFlow", "FlowFormer", "SPyNet", "PWCNet", "RAFT"};

}  // namespace fixtures
