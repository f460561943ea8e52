#pragma once

#include "topicforge/corpus.hpp"
#include "topicforge/corpus_io.hpp"
#include "topicforge/document_io.hpp"
#include "topicforge/errors.hpp"
#include "topicforge/eval.hpp"
#include "topicforge/lda.hpp"
#include "topicforge/model_io.hpp"
#include "topicforge/report.hpp"
#include "topicforge/rng.hpp"
#include "topicforge/text.hpp"
