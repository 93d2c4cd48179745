"""Compact transient-image representation with mixtures of exponentially
modified Gaussians (EMG).

Each pixel's time histogram is clipped and normalized, then fitted with a
K-component EMG mixture by gradient descent on a symmetric KL loss,
optionally coupled to its neighbours through a spatial gradient loss.
"""
from .codec import (CompressedImage, TransientVolume, compression_ratio, decode, encode,
                    read_volume, reconstruct, write_volume)
from .emg import (EmgParams, Mixture, RawEmgParams, constrain, emg_eval, emg_grad,
                  mixture_eval, unconstrain)
from .errors import (DataError, DegenerateWindowError, DomainError, EmgCodecError,
                     FormatError, LengthError, ShapeError)
from .fit import FitConfig, PixelModel, fit_image, fit_pixel, fit_window, init_params
from .losses import gradient_loss, image_loss, kld_directed, pixel_loss, spatial_gradients
from .preprocess import TimeRemap, clip_normalize, denormalize, window_remap
from .special import erfc, erfcx
from .synth import SceneSpec, add_exposure_noise, generate_scene

__version__ = "0.1.0"
