#pragma once

#include "ssfilt/boxfilter.hpp"
#include "ssfilt/color.hpp"
#include "ssfilt/config.hpp"
#include "ssfilt/entropy.hpp"
#include "ssfilt/filter.hpp"
#include "ssfilt/histogram.hpp"
#include "ssfilt/image.hpp"
#include "ssfilt/imageio.hpp"
#include "ssfilt/kappamap.hpp"
#include "ssfilt/metrics.hpp"
#include "ssfilt/pipelines.hpp"
#include "ssfilt/resample.hpp"
