// Wire types mirroring the service's JSON payloads.

export interface ContextInfo {
  storage: boolean;
  items: Record<string, string>;
}

export interface ClusterInfo {
  label: string;
  isStorage: boolean;
}

export interface WindowReport {
  windowEndDay: number;
  predicted: string[];
  observed: string[];
  storageItems: string[];
  missingList: string[];
}

export interface SessionState {
  day: number;
  visitsToday: number;
  windowStartDay: number;
  windowEndDay: number;
  windowEntries: number;
  currentContext: string | null;
  latestDetections: string[];
  teachBufferCount: number;
  missingList: string[];
  storageItems: string[];
  pendingStorageObserved: string[];
  vocabulary: string[];
  contexts: Record<string, ContextInfo>;
  clusters: ClusterInfo[];
  reportCount: number;
  lastReport: WindowReport | null;
}

export interface DiffResult {
  difference: string[];
  userList: string[];
}

export interface TeachResult {
  staged: number;
  context: string;
  label: string;
  detections: string[];
}

export interface LearnResult {
  learned: number;
  recruited: number;
  clusters: number;
}

export interface VisitResult {
  context: string;
  detections: string[];
  routed: "stcm" | "storage";
  day: number;
}
