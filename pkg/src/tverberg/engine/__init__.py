from .search import Outcome, SearchError, SearchOutcome, find_tverberg_partition, refute_occurrence
