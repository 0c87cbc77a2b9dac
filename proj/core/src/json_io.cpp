#include "ptbcache/json_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace ptb {

namespace {

ojson ints_json(const std::vector<Int>& v) {
  ojson a = ojson::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::vector<Int> ints_from_json(const ojson& a) {
  std::vector<Int> out;
  for (const auto& x : a)
    out.push_back(x.is_string() ? parse_int(x.get<std::string>()) : Int(x.get<long long>()));
  return out;
}

ojson gains_json(const GainDecomposition& g) {
  ojson j;
  j["raw_subfile_saving"] = to_string(g.raw_subfile_saving);
  j["raw_packet_saving"] = to_string(g.raw_packet_saving);
  j["splitting_gain"] = to_string(g.splitting_gain);
  return j;
}

}  // namespace

ojson design_json(const PtbDesign& d) {
  ojson j;
  j["name"] = d.name;
  j["K"] = d.K;
  j["N"] = d.N;
  j["M"] = d.M;
  j["t"] = d.t;
  j["tbar"] = d.tbar;
  j["grouping"] = d.grouping.partition().parts();
  ojson types = ojson::array();
  for (const auto& v : d.packet_types) types.push_back(v.padded(d.grouping.group_count()));
  j["packet_types"] = types;
  ojson mts = ojson::array();
  for (size_t r = 0; r < d.multicast_types.size(); ++r) {
    ojson m;
    m["type"] = d.multicast_types[r].partition.parts();
    m["starred"] = d.starred(static_cast<int>(r));
    m["active"] = d.selections[r].active;
    m["transmitter_groups"] = d.selections[r].unique_part_indices;
    m["z"] = to_string(d.z.empty() ? Int(0) : d.z[r]);
    mts.push_back(std::move(m));
  }
  j["multicast_types"] = mts;
  ojson fsrt = ojson::array();
  for (const auto& row : d.fsrt.rows) {
    ojson r = ojson::array();
    for (const auto& e : row.entries) {
      if (e)
        r.push_back(to_ll(*e));
      else
        r.push_back(nullptr);
    }
    fsrt.push_back(std::move(r));
  }
  j["fsrt"] = fsrt;
  j["alpha_lcm"] = ints_json(d.alpha_lcm);
  j["raw_counts"] = ints_json(d.raw_counts);
  j["F"] = to_string(d.F);
  j["F_jcm"] = to_string(d.F_jcm);
  j["ratio"] = to_string(d.ratio());
  j["gains"] = gains_json(d.gains);
  j["coupled"] = nullptr;
  return j;
}

ojson design_json(const CoupledDesign& d) {
  ojson j;
  j["name"] = d.name;
  j["K"] = d.K;
  j["N"] = d.N;
  j["M"] = d.M;
  j["t"] = d.t;
  j["tbar"] = d.tbar;
  j["grouping"] = d.grouping.partition().parts();
  ojson types = ojson::array();
  for (const auto& v : d.types) types.push_back(std::vector<int>{v.x, v.y});
  j["packet_types"] = types;
  ojson mts = ojson::array();
  const int a = d.grouping.group_sizes()[0], b = d.grouping.group_sizes()[1];
  int idx = 0;
  for (int u = std::max(0, d.t + 1 - b); u <= std::min(d.t + 1, a); ++u, ++idx) {
    ojson m;
    m["profile"] = std::vector<int>{u, d.t + 1 - u};
    ojson sels = ojson::array();
    for (const auto& g : d.groups) sels.push_back(side_selection_str(g.selections[idx]));
    m["selections"] = sels;
    mts.push_back(std::move(m));
  }
  j["multicast_types"] = mts;
  j["fsrt"] = nullptr;
  j["alpha_lcm"] = ints_json(d.alpha_total);
  j["raw_counts"] = ints_json(d.raw_counts);
  j["F"] = to_string(d.F);
  j["F_jcm"] = to_string(d.F_jcm);
  j["ratio"] = to_string(d.ratio());
  j["gains"] = gains_json(d.gains);
  ojson c;
  c["H"] = d.H();
  ojson gamma = ojson::array(), alphas = ojson::array(), zs = ojson::array();
  for (const auto& g : d.groups) {
    gamma.push_back(to_string(g.gamma));
    alphas.push_back(ints_json(g.alpha));
    zs.push_back(ints_json(g.z));
  }
  c["gamma"] = gamma;
  c["alphas"] = alphas;
  c["z"] = zs;
  j["coupled"] = c;
  return j;
}

AnyDesign design_from_json(const ojson& j) {
  const int K = j.at("K").get<int>();
  const int N = j.at("N").get<int>();
  const int M = j.at("M").get<int>();
  const int t = j.at("t").get<int>();
  auto grouping = PartitionVector::of(j.at("grouping").get<std::vector<int>>());
  const std::string name = j.value("name", std::string("json"));
  const Int stored_f = parse_int(j.at("F").get<std::string>());

  if (!j.at("coupled").is_null()) {
    std::vector<std::vector<SideSelection>> sels;
    const int H = j.at("coupled").at("H").get<int>();
    sels.resize(H);
    for (const auto& m : j.at("multicast_types")) {
      const auto row = m.at("selections");
      for (int h = 0; h < H; ++h) {
        const std::string s = row.at(h).get<std::string>();
        SideSelection v = SideSelection::Inactive;
        if (s == "big") v = SideSelection::BigSide;
        else if (s == "small") v = SideSelection::SmallSide;
        else if (s == "both") v = SideSelection::Both;
        else if (s != "off") throw design_error("unknown side selection '" + s + "'");
        sels[h].push_back(v);
      }
    }
    auto d = assemble_coupled(name, NodeGrouping(grouping), t, std::move(sels), N, M);
    if (d.F != stored_f)
      throw validation_error("design JSON is stale: recomputed F=" + to_string(d.F) +
                             " but document says " + to_string(stored_f));
    return d;
  }

  std::vector<TransmitterSelection> sels;
  for (const auto& m : j.at("multicast_types")) {
    if (!m.at("active").get<bool>())
      sels.push_back(TransmitterSelection::inactive());
    else
      sels.push_back(TransmitterSelection::of(m.at("transmitter_groups").get<std::vector<int>>()));
  }
  auto d = assemble_design(name, NodeGrouping(grouping), t, std::move(sels), N, M);
  // The document's multicast types must line up with the deterministic
  // enumeration order.
  const auto& mts_doc = j.at("multicast_types");
  if (mts_doc.size() != d.multicast_types.size())
    throw validation_error("design JSON multicast type count mismatch");
  for (size_t r = 0; r < d.multicast_types.size(); ++r) {
    auto doc_type = mts_doc.at(r).at("type").get<std::vector<int>>();
    if (PartitionVector::of(doc_type) != d.multicast_types[r].partition)
      throw validation_error("design JSON multicast types out of order");
  }
  if (d.F != stored_f)
    throw validation_error("design JSON is stale: recomputed F=" + to_string(d.F) +
                           " but document says " + to_string(stored_f));
  return d;
}

AnyDesign load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw design_error("cannot open design file " + path);
  ojson j;
  in >> j;
  return design_from_json(j);
}

ojson sim_report_json(const SimReport& r, bool include_wall) {
  ojson j;
  j["design"] = r.design_name;
  j["K"] = r.K;
  j["N"] = r.N;
  j["M"] = r.M;
  j["t"] = r.t;
  j["tbar"] = r.tbar;
  j["file_bits"] = r.file_bits;
  j["demands"] = r.demands;
  ojson ok = ojson::array();
  for (bool b : r.decode_ok) ok.push_back(b);
  j["decode_ok"] = ok;
  j["all_decoded"] = r.all_decoded;
  j["cache_audit_ok"] = r.cache_audit_ok;
  j["rate"] = to_string(r.rate);
  j["F"] = to_string(r.F);
  j["F_jcm"] = to_string(r.F_jcm);
  j["ratio"] = to_string(r.ratio);
  j["gains"] = gains_json(r.gains);
  j["messages"] = r.messages;
  j["total_bits"] = to_string(r.total_bits);
  if (include_wall) j["wall_ms"] = r.wall_ms;
  return j;
}

ojson validation_report_json(const ValidationReport& r, long long file_bits) {
  ojson j;
  ojson users = ojson::array();
  for (size_t k = 0; k < r.per_user.size(); ++k) {
    ojson u;
    u["user"] = k + 1;
    u["ok"] = r.per_user[k].decode_ok;
    if (!r.per_user[k].decode_ok) u["detail"] = r.per_user[k].detail;
    users.push_back(std::move(u));
  }
  j["per_user"] = users;
  j["all_decoded"] = r.all_decoded;
  j["cache_audit_ok"] = r.cache_audit_ok;
  j["messages_ok"] = r.messages_ok;
  j["rate"] = to_string(r.rate);
  j["messages"] = r.message_count;
  j["bits"] = to_string(r.total_bits);
  j["file_bits"] = file_bits;
  return j;
}

void write_schedule_audit(std::ostream& os, const Placement& p, const DeliverySchedule& s) {
  for (const auto& msg : s.messages) {
    ojson j;
    j["group"] = mask_to_nodes(msg.group_mask);
    j["sender"] = msg.sender;
    j["h"] = msg.h + 1;
    j["length_bits"] = msg.length_bits;
    ojson cs = ojson::array();
    for (const auto& c : msg.constituents) {
      ojson e;
      e["user"] = c.requester;
      e["file"] = c.file;
      e["subset"] = mask_to_nodes(p.layout.packets[c.packet_id].mask);
      e["h"] = c.h + 1;
      e["split"] = c.split;
      cs.push_back(std::move(e));
    }
    j["constituents"] = cs;
    os << j.dump() << '\n';
  }
}

std::string search_csv(const SearchResult& r) {
  std::ostringstream os;
  os << "grouping,selections,alpha_lcm,F,F_jcm,ratio,validated\n";
  for (const auto& e : r.table) {
    os << '"' << e.grouping.str() << "\",\"" << e.selections_str << "\",\"";
    for (size_t i = 0; i < e.alpha.size(); ++i) os << (i ? " " : "") << e.alpha[i];
    os << "\"," << e.F << ',' << r.F_jcm << ',' << to_string(Rat(e.F, r.F_jcm)) << ',';
    switch (e.validation) {
      case RankedEntry::Validation::NotRun: os << "not-run"; break;
      case RankedEntry::Validation::Pass: os << "pass"; break;
      case RankedEntry::Validation::Fail: os << "fail"; break;
    }
    os << '\n';
  }
  return os.str();
}

std::string sim_csv_header() {
  return "design,K,N,M,t,tbar,seed,file_bits,rate,F,F_jcm,ratio,messages,all_decoded\n";
}

std::string sim_csv_row(const SimReport& r, uint64_t seed) {
  std::ostringstream os;
  os << r.design_name << ',' << r.K << ',' << r.N << ',' << r.M << ',' << r.t << ',' << r.tbar
     << ',' << seed << ',' << r.file_bits << ',' << to_string(r.rate) << ',' << r.F << ','
     << r.F_jcm << ',' << to_string(r.ratio) << ',' << r.messages << ','
     << (r.all_decoded ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace ptb
