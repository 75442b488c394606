#pragma once

#include "helmstab/dst.hpp"
#include "helmstab/experiment.hpp"
#include "helmstab/fdm.hpp"
#include "helmstab/grid.hpp"
#include "helmstab/kernels.hpp"
#include "helmstab/march.hpp"
#include "helmstab/noise.hpp"
#include "helmstab/spectral.hpp"
