package com.shop.service;

import com.shop.repo.ProductRepository;
import com.shop.model.Product;
import com.shop.util.Logger;

public class InventoryService {
    private final ProductRepository products = new ProductRepository();
    private final Logger log = new Logger("inventory");

    public void restock(int amount) {
        for (Product p : products.all()) {
            log.info("restock " + p + " by " + amount);
        }
    }
}
