#pragma once

#include "stegodoc/bench.hpp"
#include "stegodoc/codec.hpp"
#include "stegodoc/error.hpp"
#include "stegodoc/halftone.hpp"
#include "stegodoc/image.hpp"
#include "stegodoc/metrics.hpp"
#include "stegodoc/netpbm.hpp"
#include "stegodoc/pipeline.hpp"
#include "stegodoc/quadtree.hpp"
#include "stegodoc/stego.hpp"
