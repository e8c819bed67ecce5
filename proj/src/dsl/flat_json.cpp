#include "flat_json.hpp"

#include <json.hpp>

namespace pec::dsl::detail
{

namespace
{

using json = nlohmann::json;

class FlatSax : public nlohmann::json_sax<json>
{
public:
    explicit FlatSax(FlatObject& out) : out_{ out } {}

    bool null() override { return scalar(JsonScalar::Kind::null, "null"); }
    bool boolean(bool value) override { return scalar(JsonScalar::Kind::boolean, value ? "true" : "false"); }
    bool number_integer(number_integer_t value) override
    {
        return scalar(value < 0 ? JsonScalar::Kind::negative_integer : JsonScalar::Kind::unsigned_integer,
                      std::to_string(value));
    }
    bool number_unsigned(number_unsigned_t value) override
    {
        return scalar(JsonScalar::Kind::unsigned_integer, std::to_string(value));
    }
    bool number_float(number_float_t /*value*/, const string_t& text) override
    {
        return scalar(JsonScalar::Kind::decimal, text);
    }
    bool string(string_t& value) override { return scalar(JsonScalar::Kind::string, value); }
    bool binary(binary_t& /*value*/) override { return scalar(JsonScalar::Kind::nested, {}); }

    bool start_object(std::size_t /*elements*/) override { return open(true); }
    bool end_object() override { return close(); }
    bool start_array(std::size_t /*elements*/) override { return open(false); }
    bool end_array() override { return close(); }

    bool key(string_t& value) override
    {
        if (depth_ == 1)
            key_ = value;
        return true;
    }

    bool parse_error(std::size_t position, const std::string& /*token*/,
                     const nlohmann::detail::exception& /*error*/) override
    {
        out_.error = "malformed JSON near byte " + std::to_string(position);
        return false;
    }

    [[nodiscard]] bool saw_object() const { return saw_object_; }

private:
    bool scalar(JsonScalar::Kind kind, std::string text)
    {
        if (depth_ == 0) {
            out_.error = "expected a JSON object";
            return false;
        }
        if (depth_ == 1)
            out_.members.insert_or_assign(key_, JsonScalar{ kind, std::move(text) });
        return true;
    }

    bool open(bool object)
    {
        if (depth_ == 0 && !object) {
            out_.error = "expected a JSON object";
            return false;
        }
        if (depth_ == 0)
            saw_object_ = true;
        else if (depth_ == 1)
            out_.members.insert_or_assign(key_, JsonScalar{ JsonScalar::Kind::nested, {} });
        ++depth_;
        return true;
    }

    bool close()
    {
        --depth_;
        return true;
    }

    FlatObject& out_;
    int depth_ = 0;
    std::string key_;
    bool saw_object_ = false;
};

} // namespace

FlatObject parse_flat_object(std::string_view text)
{
    FlatObject out;
    FlatSax sax{ out };
    const bool ok = json::sax_parse(text.begin(), text.end(), &sax);
    if (ok && !sax.saw_object())
        out.error = "expected a JSON object";
    else if (!ok && out.error.empty())
        out.error = "malformed JSON";
    if (!out.error.empty())
        out.members.clear();
    return out;
}

} // namespace pec::dsl::detail
