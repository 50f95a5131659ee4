"""Feature extractors, text-line detection and an invariance benchmark
for handwritten-character images."""

from .classify import (
    Evaluation,
    FeatureBase,
    LabeledFeature,
    Prediction,
    classify,
    euclidean_distance,
    evaluate,
)
from .contour import ChainCode, Contour, ContourParam, chain_to_points, parameterize, to_chain_code, trace_contour
from .fourier import FourierDescriptor, elliptic_fourier, fourier_feature, reconstruct
from .gabor import GaborKernel, GaborParams, convolve, gabor_feature, gabor_kernel
from .hough import (
    HoughAccumulator,
    HoughPeak,
    SubsetPartition,
    TextLine,
    accumulate,
    detect_peaks,
    detect_text_lines,
    hough_char_feature,
    hough_rho,
    partition_subsets,
)
from .raster import (
    ConnectedComponent,
    PageMetrics,
    binarize,
    binarize_otsu,
    binarize_sauvola,
    connected_components,
    gravity_center,
    page_metrics,
)
from .synth import DatasetItem, make_benchmark_dataset, make_line_page, synth_glyphs
from .transforms import TransformSpec, apply_transform
from .wavelet import SubbandSet, WaveletSpec, dwt2, idwt2, wavelet_feature

__version__ = "0.1.0"
