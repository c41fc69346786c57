package com.shop.model;

public class Product implements Comparable<Product> {
    private final String sku;
    private final Money price;

    public Product(String sku, Money price) {
        this.sku = sku;
        this.price = price;
    }

    public Money price() {
        return price;
    }

    @Override
    public int compareTo(Product other) {
        return sku.compareTo(other.sku);
    }
}
