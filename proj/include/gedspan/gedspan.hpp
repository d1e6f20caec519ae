#pragma once

#include "gedspan/annotation.hpp"
#include "gedspan/baseline.hpp"
#include "gedspan/decode.hpp"
#include "gedspan/error.hpp"
#include "gedspan/eval.hpp"
#include "gedspan/io.hpp"
#include "gedspan/normalize.hpp"
#include "gedspan/pipeline.hpp"
#include "gedspan/rules.hpp"
#include "gedspan/spans.hpp"
#include "gedspan/utf8.hpp"
