/** JSON shapes exchanged with the review API. */

export type ItemStatus = "Pending" | "Decided";

export type CandidateSource = "PartialExact" | "PartialSuperset" | "EditDistance";

export interface Candidate {
  scr_ui: string;
  matched_term: string;
  source: CandidateSource;
  query: string;
  extra_parts: number | null;
  distance: number | null;
}

export interface ReviewItem {
  descriptor_ui: string;
  descriptor_name: string;
  pmn_text: string;
  x_text: string;
  candidates: Candidate[];
  status: ItemStatus;
  chosen_scr_ui: string | null;
}

export interface HostAgreement {
  descriptor_ui: string;
  resolved_hosts: string[];
  pmn_host_names: string[];
  pmn_hosts_mapped: string[];
  unmapped_names: string[];
  class: string;
  warnings: string[];
}

export interface DecisionBody {
  descriptor_ui: string;
  chosen_scr_ui: string | null;
  reviewer: string;
}
