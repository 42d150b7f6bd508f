#pragma once

// Umbrella header for the whole library.

#include "tokscope/byte_level.hpp"
#include "tokscope/corpus.hpp"
#include "tokscope/error.hpp"
#include "tokscope/io.hpp"
#include "tokscope/metrics.hpp"
#include "tokscope/pipeline.hpp"
#include "tokscope/report.hpp"
#include "tokscope/segmentation.hpp"
#include "tokscope/tokenizer.hpp"
#include "tokscope/unicode.hpp"
