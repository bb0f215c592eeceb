"""clauseplan: graph-based content planning and retrieval generation for
legal clauses."""

__version__ = "0.1.0"

from .corpus import (  # noqa: F401
    ClauseRecord,
    Corpus,
    SplitSpec,
    TopicStats,
    filter_topics,
    load_ledgar,
    split_by_contract,
    topic_frequency_bins,
)
from .generator import build_index, generate, retrieve_clause  # noqa: F401
from .keywords import (  # noqa: F401
    ReferencePlan,
    TopicKeywordList,
    build_plan_dataset,
    build_reference_plan,
    build_sequential_plan,
    extract_topic_keywords,
    lemmatize,
    tokenize,
)
from .metrics import EvalPair, bleu, evaluate_generation, rouge_l, rouge_n  # noqa: F401
from .plangraph import (  # noqa: F401
    GeneratedPlan,
    PlanGraph,
    WalkConfig,
    aggregate_ranks,
    build_graph,
    generate_plan,
    load_graph,
    rank_reference_plan,
    save_graph,
    score_neighbors,
)
