// Shapes of the /api/v1 payloads this UI consumes. The UI never computes
// scales or triads itself; every pivot list, walk, and count shown comes
// from one of these responses.

export interface GraphVertex {
  label: string; // key text, e.g. "C:maj" or "a:min"
  name: string; // figure-style vertex name, e.g. "M_C"
  tonic: number; // 0..11
  family: "maj" | "min";
  scales: { tonic: number; kind: string }[];
  triads: string[];
}

export interface GraphDoc {
  vertex_count: number;
  vertices: GraphVertex[];
  edges: { between: [string, string]; pivots: string[] }[];
}

export interface NeighborEntry {
  key: string;
  pivots: string[];
  corpus_frequency?: number;
}

export interface NeighborsDoc {
  key: string;
  neighbors: NeighborEntry[];
}

export interface WalksDoc {
  count: number;
  walks: { keys: string[]; pivot_options: string[][] }[];
}

export interface HistogramEntry {
  from: "maj" | "min";
  to: "maj" | "min";
  interval: number;
  display: string;
  songs: number;
}

export interface CorpusStatsDoc {
  songs: number;
  records: number;
  distinct_classes: number;
  histogram: HistogramEntry[];
  unique_song_graphs: number;
}

export interface ApiError {
  error: string;
  detail: string;
  line?: number;
}
